#include "ifm/oscillator_well.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ifm {

WellBomb::WellBomb(double mass_in, double omega_in)
    : mass(mass_in), omega(omega_in) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("WellBomb: mass must be positive");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("WellBomb: omega must be positive");
  }
}

double KickSpectrum::total() const {
  double sum = 0.0;
  for (const double p : probability) sum += p;
  return sum;
}

double KickSpectrum::mean_energy(double omega) const {
  double sum = 0.0;
  for (std::size_t n = 0; n < probability.size(); ++n) {
    sum += static_cast<double>(n) * omega * probability[n];
  }
  return sum;
}

KickSpectrum excitation_spectrum(const WellBomb& well, double q,
                                 std::size_t n_max) {
  if (!(q >= 0.0)) {
    throw std::invalid_argument("excitation_spectrum: q must be >= 0");
  }
  if (n_max < 1) {
    throw std::invalid_argument("excitation_spectrum: n_max must be >= 1");
  }
  const double lambda = q * q / (2.0 * well.mass * well.omega);
  KickSpectrum spectrum;
  spectrum.kick = q;
  spectrum.poisson_lambda = lambda;
  spectrum.probability.resize(n_max + 1);
  double p = std::exp(-lambda);
  spectrum.probability[0] = p;
  for (std::size_t n = 1; n <= n_max; ++n) {
    p *= lambda / static_cast<double>(n);
    spectrum.probability[n] = p;
  }
  return spectrum;
}

double stay_probability(const WellBomb& well, double q) {
  if (!(q >= 0.0)) {
    throw std::invalid_argument("stay_probability: q must be >= 0");
  }
  return std::exp(-q * q / (2.0 * well.mass * well.omega));
}

double well_trigger_bound(const WellBomb& well) {
  return std::sqrt(2.0 * well.mass * well.omega * std::numbers::ln2);
}

std::size_t suggested_n_max(double lambda) {
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("suggested_n_max: lambda must be >= 0");
  }
  return static_cast<std::size_t>(
      std::ceil(lambda + 12.0 * std::sqrt(lambda) + 20.0));
}

}  // namespace ifm
