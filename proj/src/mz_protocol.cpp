#include "ifm/mz_protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ifm/golden_section.hpp"
#include "ifm/mode_state.hpp"
#include "ifm/philox.hpp"

namespace ifm {

namespace {

constexpr std::size_t kLower = 0;  // input / bright port
constexpr std::size_t kUpper = 1;  // blocked arm / dark port

// Interference nulls land at O(eps^2) instead of 0 because sin(pi) is not
// exactly zero in floating point. Probabilities below this are numerical
// zeros; snapping keeps zero-probability outcomes exactly unsampleable.
constexpr double kNullSnap = 1e-14;

OutcomeDistribution canonicalize(double bright, double dark, double absorbed) {
  double p[3] = {bright, dark, absorbed};
  for (double& value : p) {
    if (value < kNullSnap) value = 0.0;
  }
  double* largest = std::max_element(p, p + 3);
  double rest = 0.0;
  for (const double* q = p; q != p + 3; ++q) {
    if (q != largest) rest += *q;
  }
  *largest = 1.0 - rest;
  return OutcomeDistribution{p[0], p[1], p[2]};
}

unsigned resolve_threads(unsigned requested, std::uint64_t n) {
  unsigned threads = requested;
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = std::min<std::uint64_t>(threads, n);
  return std::max(1u, std::min(threads, 256u));
}

}  // namespace

void validate(const MzConfig& cfg) {
  if (!(cfg.reflectivity > 0.0 && cfg.reflectivity < 1.0)) {
    throw std::invalid_argument("MzConfig: R must lie in (0, 1)");
  }
  if (!std::isfinite(cfg.calibration_phase)) {
    throw std::invalid_argument("MzConfig: calibration_phase must be finite");
  }
}

OutcomeDistribution outcome_distribution(const MzConfig& cfg) {
  validate(cfg);
  const BeamSplitterSpec splitter{cfg.reflectivity, kLower, kUpper};

  ModeState state = ModeState::single_photon(2, kLower);
  state = apply_beamsplitter(state, splitter);
  if (cfg.bomb_present) {
    state = apply_absorber(state, AbsorberSpec{kUpper});
  }
  state = apply_phase(state, kUpper, cfg.calibration_phase);
  state = apply_beamsplitter(state, splitter);

  return canonicalize(state.mode_probability(kLower),
                      state.mode_probability(kUpper), state.p_absorbed());
}

Outcome sample_outcome(const OutcomeDistribution& dist, double u) {
  const double p[3] = {dist.p_bright, dist.p_dark, dist.p_absorbed};
  int last_nonzero = 0;
  for (int k = 0; k < 3; ++k) {
    if (p[k] > 0.0) last_nonzero = k;
  }
  double cumulative = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (p[k] == 0.0) continue;
    if (k == last_nonzero) return static_cast<Outcome>(k);
    cumulative += p[k];
    if (u < cumulative) return static_cast<Outcome>(k);
  }
  return static_cast<Outcome>(last_nonzero);  // unreachable for valid dist
}

TrialTally run_trials(const MzConfig& cfg, std::uint64_t n, std::uint64_t seed,
                      unsigned threads) {
  if (n == 0) {
    throw std::invalid_argument("run_trials: n must be >= 1");
  }
  const OutcomeDistribution dist = outcome_distribution(cfg);
  const unsigned workers = resolve_threads(threads, n);

  struct Counts {
    std::uint64_t bright = 0, dark = 0, absorbed = 0;
  };
  std::vector<Counts> partial(workers);

  auto worker = [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    Counts local;
    for (std::uint64_t i = begin; i < end; ++i) {
      const double u = RandomStream(seed, i).next_double();
      switch (sample_outcome(dist, u)) {
        case Outcome::Bright: ++local.bright; break;
        case Outcome::Dark: ++local.dark; break;
        case Outcome::Absorbed: ++local.absorbed; break;
      }
    }
    partial[w] = local;
  };

  if (workers == 1) {
    worker(0, 0, n);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = n / workers;
    const std::uint64_t extra = n % workers;
    std::uint64_t begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
      pool.emplace_back(worker, w, begin, end);
      begin = end;
    }
    for (std::thread& t : pool) t.join();
  }

  TrialTally tally;
  tally.n_trials = n;
  tally.seed = seed;
  for (const Counts& c : partial) {
    tally.bright += c.bright;
    tally.dark += c.dark;
    tally.absorbed += c.absorbed;
  }
  return tally;
}

StrategyReport sequential_strategy(const MzConfig& cfg, std::uint64_t max_photons) {
  validate(cfg);
  if (!cfg.bomb_present) {
    throw std::invalid_argument("sequential_strategy: requires bomb_present");
  }
  if (max_photons == 0) {
    throw std::invalid_argument("sequential_strategy: max_photons must be >= 1");
  }
  const OutcomeDistribution per_shot = outcome_distribution(cfg);
  // p_conclusive = 1 - p_bright computed as a sum, not a difference, so
  // small-R cases keep full precision.
  const double p_conclusive = per_shot.p_dark + per_shot.p_absorbed;
  const double p_continue = per_shot.p_bright;
  const double give_up = std::pow(p_continue, static_cast<double>(max_photons));
  const double concluded = 1.0 - give_up;

  StrategyReport report;
  report.max_photons = max_photons;
  report.p_give_up = give_up;
  report.p_detect = per_shot.p_dark * concluded / p_conclusive;
  report.p_explode = per_shot.p_absorbed * concluded / p_conclusive;
  report.expected_photons_sent = concluded / p_conclusive;
  return report;
}

double efficiency(double reflectivity) {
  if (!(reflectivity > 0.0 && reflectivity < 1.0)) {
    throw std::invalid_argument("efficiency: R must lie in (0, 1)");
  }
  return (1.0 - reflectivity) / (2.0 - reflectivity);
}

double expected_photons_unbounded(double reflectivity) {
  if (!(reflectivity > 0.0 && reflectivity < 1.0)) {
    throw std::invalid_argument("expected_photons_unbounded: R must lie in (0, 1)");
  }
  return 1.0 / (reflectivity * (2.0 - reflectivity));
}

double strategy_objective(double reflectivity, double lambda) {
  return efficiency(reflectivity) -
         lambda * expected_photons_unbounded(reflectivity);
}

OptimizeResult optimize_reflectivity(double lambda) {
  if (!(std::isfinite(lambda) && lambda >= 0.0)) {
    throw std::invalid_argument("optimize_reflectivity: lambda must be finite and >= 0");
  }
  constexpr double kEdge = 1e-6;
  const double r_star = golden_section_maximize(
      [lambda](double r) { return strategy_objective(r, lambda); }, kEdge,
      1.0 - kEdge, 1e-8);
  return OptimizeResult{r_star, strategy_objective(r_star, lambda)};
}

}  // namespace ifm
