#include "ifm/trigger_model.hpp"

#include <cmath>
#include <stdexcept>

namespace ifm {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

BombTrigger::BombTrigger(double delta_x_in, double p_th_in)
    : delta_x(delta_x_in),
      sigma_p(0.0),
      delta_p(0.0),
      p_th(p_th_in) {
  if (!(delta_x > 0.0) || !std::isfinite(delta_x)) {
    throw std::invalid_argument("BombTrigger: delta_x must be positive");
  }
  if (!(p_th >= 0.0)) {
    throw std::invalid_argument("BombTrigger: p_th must be >= 0");
  }
  sigma_p = 1.0 / (2.0 * delta_x);
  delta_p = 1.0 / delta_x;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double false_trigger_probability(const BombTrigger& trigger) {
  return std::erfc(trigger.p_th / trigger.sigma_p * kInvSqrt2);
}

DiscriminationReport kick_discrimination(const BombTrigger& trigger, double q) {
  if (!(q >= 0.0)) {
    throw std::invalid_argument("kick_discrimination: q must be >= 0");
  }
  DiscriminationReport report;
  report.false_trigger = normal_cdf(-trigger.p_th / trigger.sigma_p);
  report.miss = normal_cdf((trigger.p_th - q) / trigger.sigma_p);
  report.min_error = min_discrimination_error(trigger, q);
  return report;
}

double min_discrimination_error(const BombTrigger& trigger, double q) {
  if (!(q >= 0.0)) {
    throw std::invalid_argument("min_discrimination_error: q must be >= 0");
  }
  // Equal priors, threshold at q/2 is optimal; both error types equal
  // Phi(-q / (2 sigma)).
  return normal_cdf(-q / (2.0 * trigger.sigma_p));
}

double minimum_detectable_kick(const BombTrigger& trigger, double error_budget) {
  if (!(error_budget > 0.0 && error_budget < 0.5)) {
    throw std::invalid_argument(
        "minimum_detectable_kick: error_budget must lie in (0, 0.5)");
  }
  // min_error is strictly decreasing in q, from 0.5 at q = 0. Bracket in
  // units of sigma_p so the iterate sequence is scale covariant.
  double lo = 0.0;
  double hi = trigger.sigma_p;
  int guard = 0;
  while (min_discrimination_error(trigger, hi) > error_budget) {
    hi *= 2.0;
    if (++guard > 1100) {
      throw std::runtime_error("minimum_detectable_kick: bracket expansion failed");
    }
  }
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (min_discrimination_error(trigger, mid) > error_budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;  // smallest iterate known to satisfy the budget
}

}  // namespace ifm
