// golden_section.hpp
// Golden-section search for a scalar maximum on a closed interval.

#pragma once

#include <cmath>
#include <stdexcept>

namespace ifm {

// Maximizes a unimodal f on [lo, hi]; returns the bracket midpoint once
// the bracket is narrower than x_tol. One f evaluation per iteration.
template <class F>
double golden_section_maximize(F&& f, double lo, double hi, double x_tol) {
  if (!(lo < hi) || !(x_tol > 0.0)) {
    throw std::invalid_argument("golden_section_maximize: bad bracket or tolerance");
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > x_tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace ifm
