// mz_protocol.hpp
// The single-photon Mach-Zehnder bomb test (Elitzur-Vaidman layout):
// analytic outcome distributions, seeded Monte Carlo trials, the
// send-until-conclusive strategy, and reflectivity optimization.
//
// Layout convention: both splitters share reflectivity R and the object
// sits in the reflected (upper) arm of the first splitter, so with the
// arm blocked p_absorbed = R. A calibration phase on the upper arm
// (default pi) makes the dark port exactly dark for every R when the arm
// is clear.

#pragma once

#include <cstdint>
#include <numbers>

namespace ifm {

struct MzConfig {
  double reflectivity = 0.5;                       // R in (0, 1)
  bool bomb_present = true;
  double calibration_phase = std::numbers::pi;     // radians, upper arm
};

enum class Outcome { Bright = 0, Dark = 1, Absorbed = 2 };

// Probabilities over {Bright, Dark, Absorbed} for one photon pass.
// Components lie in [0, 1] and sum to 1.
struct OutcomeDistribution {
  double p_bright = 0.0;
  double p_dark = 0.0;
  double p_absorbed = 0.0;

  double sum() const { return p_bright + p_dark + p_absorbed; }
};

struct TrialTally {
  std::uint64_t bright = 0;
  std::uint64_t dark = 0;
  std::uint64_t absorbed = 0;
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 0;
};

// Repeat-on-Bright strategy outcome. p_detect + p_explode + p_give_up = 1
// and expected_photons_sent <= max_photons.
struct StrategyReport {
  double p_detect = 0.0;            // Dark observed before any absorption
  double p_explode = 0.0;
  double p_give_up = 0.0;           // max_photons inconclusive passes
  double expected_photons_sent = 0.0;
  std::uint64_t max_photons = 0;
};

struct OptimizeResult {
  double reflectivity = 0.0;
  double objective = 0.0;
};

// Throws std::invalid_argument unless 0 < R < 1 and the phase is finite.
void validate(const MzConfig& cfg);

// One pass through the interferometer, computed by composing the
// quantum-core elements BS(R) -> [absorber iff bomb] -> phase -> BS(R).
// With the bomb present the closed forms are (p_bright, p_dark,
// p_absorbed) = ((1-R)^2, R(1-R), R); without it, (1, 0, 0).
OutcomeDistribution outcome_distribution(const MzConfig& cfg);

// Classifies a uniform u in [0, 1). Zero-probability outcomes are never
// returned; the last nonzero bucket absorbs rounding residue.
Outcome sample_outcome(const OutcomeDistribution& dist, double u);

// n independent single-photon passes. Trial i draws from Philox stream
// (seed, i), so the tally is identical for every thread count.
// threads == 0 picks a hardware-based default.
TrialTally run_trials(const MzConfig& cfg, std::uint64_t n, std::uint64_t seed,
                      unsigned threads = 1);

// Closed-form (geometric series) evaluation of: send photons until Dark
// (detect), absorption (explode), or max_photons Bright passes (give up).
// Requires cfg.bomb_present.
StrategyReport sequential_strategy(const MzConfig& cfg, std::uint64_t max_photons);

// P(dark) / (P(dark) + P(absorbed)) for the with-bomb distribution,
// = (1-R)/(2-R). Throws for R outside (0, 1).
double efficiency(double reflectivity);

// Expected photons sent by the uncapped sequential strategy,
// = 1 / (R (2 - R)).
double expected_photons_unbounded(double reflectivity);

// efficiency(R) - lambda * expected_photons_unbounded(R).
double strategy_objective(double reflectivity, double lambda);

// Maximizes strategy_objective over R in (1e-6, 1 - 1e-6) by
// golden-section search with bracket tolerance 1e-8.
OptimizeResult optimize_reflectivity(double lambda);

}  // namespace ifm
