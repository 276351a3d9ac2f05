// oscillator_well.hpp
// Bomb held in a weak harmonic well: ground-state preparation, a sudden
// momentum kick, the resulting level-excitation spectrum, and the
// sensitivity bound it implies for a trigger that watches the level
// occupation. hbar = 1.
//
// Ground-state widths: delta_x = sqrt(1/(2 M omega)),
// delta_p = sqrt(M omega / 2), so delta_x * delta_p = 1/2 exactly. The
// level spacing is omega; (delta_p)^2 / (2M) = omega/4, the same scale up
// to the factor 4 inherent to order-of-magnitude uncertainty statements.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace ifm {

struct WellBomb {
  double mass;    // M > 0
  double omega;   // well angular frequency > 0

  WellBomb(double mass, double omega);

  double delta_x() const { return std::sqrt(1.0 / (2.0 * mass * omega)); }
  double delta_p() const { return std::sqrt(mass * omega / 2.0); }
  double level_spacing() const { return omega; }
};

// Occupation probabilities for levels 0..n_max after a sudden kick q.
// The displaced ground state populates levels with the Poisson law
// P(n) = exp(-lambda) lambda^n / n!, lambda = q^2 / (2 M omega);
// sum P(n) >= 1 - 1e-12 once n_max >= lambda + 12 sqrt(lambda) + 20.
struct KickSpectrum {
  std::vector<double> probability;  // index = level n
  double kick = 0.0;
  double poisson_lambda = 0.0;

  double total() const;
  // sum n * omega * P(n); equals the classical kick energy q^2/(2M) up to
  // the truncation tail.
  double mean_energy(double omega) const;
};

// Level populations from the sudden (impulsive) kick approximation,
// valid for interaction times much shorter than 1/omega. Throws for
// q < 0 or n_max < 1.
KickSpectrum excitation_spectrum(const WellBomb& well, double q,
                                 std::size_t n_max);

// exp(-q^2 / (2 M omega)); equals excitation_spectrum's P(0). Kicks well
// below delta_p leave the bomb in its ground state and hand the momentum
// to the well.
double stay_probability(const WellBomb& well, double q);

// The kick at which P(excite) = 1/2: q = sqrt(2 M omega ln 2). Ratios:
// q / delta_p = sqrt(4 ln 2) ~ 1.665 and q * delta_x = sqrt(ln 2) ~ 0.833,
// independent of M and omega — a level-watching trigger is sensitive at
// the uncertainty scale 1/delta_x and nothing can do better.
double well_trigger_bound(const WellBomb& well);

// Truncation level meeting the KickSpectrum normalization bound:
// ceil(lambda + 12 sqrt(lambda) + 20).
std::size_t suggested_n_max(double lambda);

}  // namespace ifm
