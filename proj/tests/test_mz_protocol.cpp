#include "ifm/mz_protocol.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ifm/mode_state.hpp"
#include "ifm/philox.hpp"
#include "oracles.hpp"

using namespace ifm;

namespace {

constexpr double kTol = 1e-12;

MzConfig config(double r, bool bomb) {
  MzConfig cfg;
  cfg.reflectivity = r;
  cfg.bomb_present = bomb;
  return cfg;
}

// Independent route: the same network as explicit 2x2 matrix algebra on
// (lower, upper) amplitudes, no ModeState involved.
OutcomeDistribution matrix_oracle(double r, bool bomb, double phase) {
  const double t = std::sqrt(1.0 - r);
  const double s = std::sqrt(r);
  Complex lower{1.0, 0.0};
  Complex upper{0.0, 0.0};
  auto splitter = [&]() {
    const Complex u = lower, v = upper;
    lower = t * u + Complex{0.0, s} * v;
    upper = Complex{0.0, s} * u + t * v;
  };
  splitter();
  double absorbed = 0.0;
  if (bomb) {
    absorbed = std::norm(upper);
    upper = Complex{0.0, 0.0};
  }
  upper *= std::polar(1.0, phase);
  splitter();
  return OutcomeDistribution{std::norm(lower), std::norm(upper), absorbed};
}

}  // namespace

TEST_CASE("50% splitters with the bomb give 25/25/50") {
  const OutcomeDistribution dist = outcome_distribution(config(0.5, true));
  CHECK(std::abs(dist.p_bright - 0.25) <= kTol);
  CHECK(std::abs(dist.p_dark - 0.25) <= kTol);
  CHECK(std::abs(dist.p_absorbed - 0.5) <= kTol);
}

TEST_CASE("clear beam line sends everything to the bright port") {
  for (const double r : {0.1, 0.25, 0.5, 0.9, 0.999}) {
    const OutcomeDistribution dist = outcome_distribution(config(r, false));
    CHECK(dist.p_bright == 1.0);
    CHECK(dist.p_dark == 0.0);
    CHECK(dist.p_absorbed == 0.0);
  }
}

TEST_CASE("R = 0.1 with the bomb gives (0.81, 0.09, 0.10)") {
  const OutcomeDistribution dist = outcome_distribution(config(0.1, true));
  const OutcomeDistribution oracle = matrix_oracle(0.1, true, std::numbers::pi);
  CHECK(std::abs(dist.p_bright - 0.81) <= kTol);
  CHECK(std::abs(dist.p_dark - 0.09) <= kTol);
  CHECK(std::abs(dist.p_absorbed - 0.10) <= kTol);
  CHECK(std::abs(dist.p_bright - oracle.p_bright) <= kTol);
  CHECK(std::abs(dist.p_dark - oracle.p_dark) <= kTol);
}

TEST_CASE("closed forms (R, R(1-R), (1-R)^2) match the element composition") {
  RandomStream rng(31, 0);
  for (int i = 0; i < 1000; ++i) {
    const double r = 0.999998 * rng.next_double() + 1e-6;
    const OutcomeDistribution dist = outcome_distribution(config(r, true));
    CHECK(std::abs(dist.p_absorbed - r) <= kTol);
    CHECK(std::abs(dist.p_dark - r * (1.0 - r)) <= kTol);
    CHECK(std::abs(dist.p_bright - (1.0 - r) * (1.0 - r)) <= kTol);
    CHECK(std::abs(dist.sum() - 1.0) <= kTol);
  }
}

TEST_CASE("off-calibration phase fills the dark port as 2R(1-R)(1+cos phi)") {
  RandomStream rng(32, 0);
  for (int i = 0; i < 200; ++i) {
    const double r = 0.98 * rng.next_double() + 0.01;
    const double phi = (rng.next_double() - 0.5) * 6.0;
    MzConfig cfg = config(r, false);
    cfg.calibration_phase = phi;
    const OutcomeDistribution dist = outcome_distribution(cfg);
    const double expected_dark = r * (1.0 - r) * (2.0 + 2.0 * std::cos(phi));
    CHECK(dist.p_dark == doctest::Approx(expected_dark).epsilon(1e-9));
    CHECK(std::abs(dist.sum() - 1.0) <= kTol);
  }
}

TEST_CASE("invalid configs are rejected") {
  CHECK_THROWS_AS(outcome_distribution(config(0.0, true)), std::invalid_argument);
  CHECK_THROWS_AS(outcome_distribution(config(1.0, true)), std::invalid_argument);
  CHECK_THROWS_AS(outcome_distribution(config(-0.3, true)), std::invalid_argument);
  CHECK_THROWS_AS(run_trials(config(0.5, true), 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sequential_strategy(config(0.5, true), 0), std::invalid_argument);
  CHECK_THROWS_AS(sequential_strategy(config(0.5, false), 10), std::invalid_argument);
  CHECK_THROWS_AS(efficiency(0.0), std::invalid_argument);
  CHECK_THROWS_AS(efficiency(1.0), std::invalid_argument);
  CHECK_THROWS_AS(optimize_reflectivity(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(optimize_reflectivity(std::nan("")), std::invalid_argument);
}

TEST_CASE("trials: empirical frequencies track the analytic distribution") {
  const std::uint64_t n = 100000;
  const TrialTally tally = run_trials(config(0.5, true), n, 20240617);
  CHECK(tally.bright + tally.dark + tally.absorbed == n);

  const double se = std::sqrt(0.25 * 0.75 / static_cast<double>(n));
  CHECK(std::abs(static_cast<double>(tally.bright) / n - 0.25) < 4 * se);
  CHECK(std::abs(static_cast<double>(tally.dark) / n - 0.25) < 4 * se);
  const double se_abs = std::sqrt(0.5 * 0.5 / static_cast<double>(n));
  CHECK(std::abs(static_cast<double>(tally.absorbed) / n - 0.5) < 4 * se_abs);

  SUBCASE("chi-square consistency at significance 1e-6") {
    const double statistic = ifm::test::chi_square_statistic(
        {tally.bright, tally.dark, tally.absorbed}, {0.25, 0.25, 0.5}, n);
    CHECK(statistic < ifm::test::kChiSquareDf2Quantile1e6);
  }
}

TEST_CASE("trials: zero-probability outcomes are never sampled") {
  const TrialTally tally = run_trials(config(0.37, false), 50000, 7);
  CHECK(tally.dark == 0);
  CHECK(tally.absorbed == 0);
  CHECK(tally.bright == 50000);
}

TEST_CASE("trials: same seed reproduces identical tallies, any thread count") {
  const MzConfig cfg = config(0.5, true);
  const TrialTally one = run_trials(cfg, 40000, 99, 1);
  const TrialTally again = run_trials(cfg, 40000, 99, 1);
  const TrialTally three = run_trials(cfg, 40000, 99, 3);
  const TrialTally eight = run_trials(cfg, 40000, 99, 8);
  CHECK(one.bright == again.bright);
  CHECK(one.dark == again.dark);
  CHECK(one.absorbed == again.absorbed);
  CHECK(one.bright == three.bright);
  CHECK(one.dark == three.dark);
  CHECK(one.absorbed == three.absorbed);
  CHECK(one.bright == eight.bright);
  CHECK(one.dark == eight.dark);

  const TrialTally other_seed = run_trials(cfg, 40000, 100, 1);
  const bool differs = other_seed.bright != one.bright ||
                       other_seed.dark != one.dark ||
                       other_seed.absorbed != one.absorbed;
  CHECK(differs);
}

TEST_CASE("single-shot strategy equals the per-photon distribution") {
  const StrategyReport report = sequential_strategy(config(0.3, true), 1);
  CHECK(std::abs(report.p_detect - 0.3 * 0.7) <= kTol);
  CHECK(std::abs(report.p_explode - 0.3) <= kTol);
  CHECK(std::abs(report.p_give_up - 0.49) <= kTol);
  CHECK(std::abs(report.expected_photons_sent - 1.0) <= kTol);
}

TEST_CASE("uncapped 50% strategy detects 1/3 and explodes 2/3") {
  // 0.25^200 is far below double precision: the cap no longer matters.
  const StrategyReport report = sequential_strategy(config(0.5, true), 200);
  CHECK(std::abs(report.p_detect - 1.0 / 3.0) <= kTol);
  CHECK(std::abs(report.p_explode - 2.0 / 3.0) <= kTol);
  CHECK(report.p_give_up <= kTol);
  CHECK(std::abs(report.p_detect + report.p_explode + report.p_give_up - 1.0) <=
        kTol);
}

TEST_CASE("detection probability approaches 1/2 as R -> 0") {
  const StrategyReport report = sequential_strategy(config(1e-3, true), 200000);
  CHECK(report.p_detect == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("strategy report closes and respects the photon cap") {
  RandomStream rng(8, 0);
  for (int i = 0; i < 200; ++i) {
    const double r = 0.98 * rng.next_double() + 0.01;
    const std::uint64_t cap = 1 + static_cast<std::uint64_t>(rng.next_double() * 30);
    const StrategyReport report = sequential_strategy(config(r, true), cap);
    CHECK(std::abs(report.p_detect + report.p_explode + report.p_give_up - 1.0) <=
          kTol);
    CHECK(report.expected_photons_sent <= static_cast<double>(cap) + kTol);
    CHECK(report.expected_photons_sent >= 1.0 - kTol);
  }
}

TEST_CASE("strategy closed form agrees with direct Monte Carlo") {
  const MzConfig cfg = config(0.5, true);
  const std::uint64_t cap = 40;
  const StrategyReport analytic = sequential_strategy(cfg, cap);
  const OutcomeDistribution dist = outcome_distribution(cfg);

  const std::uint64_t runs = 100000;
  std::uint64_t detected = 0, exploded = 0, gave_up = 0;
  double photons = 0.0;
  for (std::uint64_t run = 0; run < runs; ++run) {
    RandomStream stream(555, run);
    bool concluded = false;
    for (std::uint64_t shot = 0; shot < cap; ++shot) {
      photons += 1.0;
      const Outcome outcome = sample_outcome(dist, stream.next_double());
      if (outcome == Outcome::Dark) {
        ++detected;
        concluded = true;
        break;
      }
      if (outcome == Outcome::Absorbed) {
        ++exploded;
        concluded = true;
        break;
      }
    }
    if (!concluded) ++gave_up;
  }

  const double n = static_cast<double>(runs);
  auto within_4se = [n](double empirical, double expected) {
    const double se = std::sqrt(expected * (1.0 - expected) / n);
    return std::abs(empirical - expected) < 4.0 * se;
  };
  CHECK(within_4se(detected / n, analytic.p_detect));
  CHECK(within_4se(exploded / n, analytic.p_explode));
  CHECK(gave_up == 0);  // 0.25^40 ~ 1e-25
  CHECK(photons / n == doctest::Approx(analytic.expected_photons_sent).epsilon(0.01));
}

TEST_CASE("efficiency matches the dark/conclusive ratio") {
  CHECK(std::abs(efficiency(0.5) - 1.0 / 3.0) <= kTol);
  CHECK(efficiency(0.01) == doctest::Approx(0.99 / 1.99).epsilon(1e-12));
  CHECK(efficiency(0.999999) < 1e-5);  // R -> 1: everything absorbed

  // Same number from the composed distribution.
  RandomStream rng(17, 0);
  for (int i = 0; i < 100; ++i) {
    const double r = 0.98 * rng.next_double() + 0.01;
    const OutcomeDistribution dist = outcome_distribution(config(r, true));
    const double from_dist = dist.p_dark / (dist.p_dark + dist.p_absorbed);
    CHECK(efficiency(r) == doctest::Approx(from_dist).epsilon(1e-12));
  }
}

TEST_CASE("optimizer boundaries: lambda extremes pin R* to the edges") {
  // efficiency is monotone decreasing, so lambda = 0 drives R* to the
  // lower edge 1e-6; a huge photon penalty drives it to 1 - 1e-6.
  const OptimizeResult light = optimize_reflectivity(0.0);
  CHECK(light.reflectivity >= 1e-6);
  CHECK(light.reflectivity < 1e-6 + 1e-7);

  const OptimizeResult heavy = optimize_reflectivity(1e6);
  CHECK(heavy.reflectivity <= 1.0 - 1e-6);
  CHECK(heavy.reflectivity > 1.0 - 1e-6 - 1e-7);
}

TEST_CASE("optimizer matches the grid-scan oracle at interior optima") {
  for (const double lambda : {0.001, 0.01, 0.1}) {
    const OptimizeResult result = optimize_reflectivity(lambda);
    const double oracle = ifm::test::grid_scan_argmax(
        [lambda](double r) { return strategy_objective(r, lambda); }, 1e-6,
        1.0 - 1e-6, 1000001);
    CHECK(std::abs(result.reflectivity - oracle) < 1e-6);

    // Stationary point of (1-R)/(2-R) - lambda/(R(2-R)):
    // R^2 + 2 lambda R - 2 lambda = 0.
    const double analytic = -lambda + std::sqrt(lambda * lambda + 2.0 * lambda);
    CHECK(result.reflectivity == doctest::Approx(analytic).epsilon(1e-5));
  }
}
