// acceptance.cpp
// End-to-end acceptance checks for the whole library, one printed
// pass/fail line per criterion. Exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ifm/mz_protocol.hpp"
#include "ifm/oscillator_well.hpp"
#include "ifm/philox.hpp"
#include "ifm/shadow_scatter.hpp"
#include "ifm/trigger_model.hpp"
#include "oracles.hpp"

using namespace ifm;

namespace {

int g_failures = 0;

class Criterion {
 public:
  explicit Criterion(int id, std::string title)
      : id_(id), title_(std::move(title)),
        start_(std::chrono::steady_clock::now()) {}

  void check(bool ok, const std::string& detail) {
    if (!ok) {
      all_ok_ = false;
      details_.push_back(detail);
    }
  }

  ~Criterion() {
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start_)
                          .count();
    std::printf("%s  criterion %d: %s  (%.0f ms)\n", all_ok_ ? "PASS" : "FAIL",
                id_, title_.c_str(), ms);
    for (const std::string& detail : details_) {
      std::printf("      %s\n", detail.c_str());
    }
    if (!all_ok_) ++g_failures;
  }

 private:
  int id_;
  std::string title_;
  std::chrono::steady_clock::time_point start_;
  bool all_ok_ = true;
  std::vector<std::string> details_;
};

MzConfig mz(double r, bool bomb) {
  MzConfig cfg;
  cfg.reflectivity = r;
  cfg.bomb_present = bomb;
  return cfg;
}

std::string num(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

// 1. Analytic 50% outcome distributions to 1e-12.
void criterion_1() {
  Criterion c(1, "analytic outcome distribution at R = 0.5");
  const OutcomeDistribution with_bomb = outcome_distribution(mz(0.5, true));
  c.check(std::abs(with_bomb.p_bright - 0.25) <= 1e-12,
          "p_bright != 0.25: " + num(with_bomb.p_bright));
  c.check(std::abs(with_bomb.p_dark - 0.25) <= 1e-12,
          "p_dark != 0.25: " + num(with_bomb.p_dark));
  c.check(std::abs(with_bomb.p_absorbed - 0.5) <= 1e-12,
          "p_absorbed != 0.5: " + num(with_bomb.p_absorbed));

  const OutcomeDistribution clear = outcome_distribution(mz(0.5, false));
  c.check(std::abs(clear.p_bright - 1.0) <= 1e-12, "clear p_bright != 1");
  c.check(std::abs(clear.p_dark) <= 1e-12, "clear p_dark != 0");
  c.check(std::abs(clear.p_absorbed) <= 1e-12, "clear p_absorbed != 0");
}

// 2. 1e5 Monte Carlo trials: chi-square at significance 1e-6 and seed
//    reproducibility.
void criterion_2() {
  Criterion c(2, "Monte Carlo trials match the analytic distribution");
  const std::uint64_t n = 100000;
  const std::uint64_t seed = 20240614;
  const TrialTally tally = run_trials(mz(0.5, true), n, seed);
  const double statistic = test::chi_square_statistic(
      {tally.bright, tally.dark, tally.absorbed}, {0.25, 0.25, 0.5}, n);
  c.check(statistic < test::kChiSquareDf2Quantile1e6,
          "chi-square " + num(statistic) + " exceeds " +
              num(test::kChiSquareDf2Quantile1e6));

  const TrialTally again = run_trials(mz(0.5, true), n, seed, 4);
  c.check(tally.bright == again.bright && tally.dark == again.dark &&
              tally.absorbed == again.absorbed,
          "identical seed did not reproduce identical tallies");
}

// 3. Generalized-R closed forms, efficiency values.
void criterion_3() {
  Criterion c(3, "generalized-R closed forms and efficiency");
  RandomStream rng(3, 0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double r = 0.999998 * rng.next_double() + 1e-6;
    const OutcomeDistribution dist = outcome_distribution(mz(r, true));
    worst = std::max(worst, std::abs(dist.p_absorbed - r));
    worst = std::max(worst, std::abs(dist.p_dark - r * (1.0 - r)));
    worst = std::max(worst, std::abs(dist.p_bright - (1.0 - r) * (1.0 - r)));
  }
  c.check(worst <= 1e-12, "composition vs closed form: worst " + num(worst));
  c.check(std::abs(efficiency(0.5) - 1.0 / 3.0) <= 1e-12,
          "efficiency(0.5) != 1/3");
  c.check(std::abs(efficiency(1e-3) - 0.5) <= 1e-3,
          "efficiency(1e-3) not within 1e-3 of 1/2: " + num(efficiency(1e-3)));
}

// 4. Uncertainty limit: q_min * delta_x constant; min_error anchors.
void criterion_4() {
  Criterion c(4, "uncertainty limit on the trigger sensitivity");
  for (const double budget : {0.05, 0.1587, 0.3}) {
    const double reference =
        minimum_detectable_kick(BombTrigger(1.0, 0.0), budget);
    double worst_rel = 0.0;
    for (double exponent = -3.0; exponent <= 3.0; exponent += 0.5) {
      const double delta_x = std::pow(10.0, exponent);
      const double product =
          minimum_detectable_kick(BombTrigger(delta_x, 0.0), budget) * delta_x;
      worst_rel = std::max(worst_rel, std::abs(product - reference) / reference);
    }
    c.check(worst_rel <= 1e-9, "budget " + num(budget) +
                                   ": q*dx varies by " + num(worst_rel));
  }

  const BombTrigger unit(1.0, 0.0);
  c.check(min_discrimination_error(unit, 0.0) == 0.5, "min_error(0) != 0.5");

  // q = 1/delta_x = 2 sigma: min_error must equal Phi(-1) from the
  // quadrature oracle.
  const double phi_minus_1 = test::normal_cdf_quadrature(-1.0);
  const double err = min_discrimination_error(unit, unit.delta_p);
  c.check(std::abs(err - phi_minus_1) <= 1e-9,
          "min_error(q = 1/dx) " + num(err) + " vs Phi(-1) " + num(phi_minus_1));
}

// 5. Shadow scattering at n = 2^16.
void criterion_5() {
  Criterion c(5, "shadow scattering: Babinet, scaling, closed forms");
  const double width = 64.0;
  const std::size_t n_points = 1 << 16;
  double products[3];
  int index = 0;
  for (const double denom : {64.0, 128.0, 256.0}) {
    const ApertureGrid grid(width, n_points, width / denom, 1000.0);
    const AngularSpectrum spectrum = angular_spectrum(grid);
    const double a = grid.strip_width_eff;

    c.check(spectrum.p_scattered / spectrum.p_absorbed >= 0.95,
            "Babinet ratio below 0.95 at a = W/" + num(denom));
    c.check(std::abs(spectrum.p_absorbed - a / width) <= 1e-9,
            "p_absorbed off closed form at a = W/" + num(denom));
    c.check(std::abs(spectrum.p_forward -
                     ((width - a) / width) * ((width - a) / width)) <= 1e-9,
            "p_forward off closed form at a = W/" + num(denom));
    c.check(std::abs(spectrum.p_scattered - a * (width - a) / (width * width)) <=
                1e-9,
            "p_scattered off closed form at a = W/" + num(denom));

    products[index++] =
        momentum_transfer_stats(spectrum, a).median_k_times_a;
  }
  const double lo = std::min({products[0], products[1], products[2]});
  const double hi = std::max({products[0], products[1], products[2]});
  c.check((hi - lo) / lo <= 0.02,
          "median|k|*a varies by " + num((hi - lo) / lo) + " across the sweep");
}

// 6. Harmonic well: oracle match, stay probability, energy conservation,
//    scale-invariant trigger bound.
void criterion_6() {
  Criterion c(6, "harmonic-well spectrum, energy, and sensitivity bound");
  RandomStream rng(6, 0);
  double worst_level = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double mass = 0.1 + 9.9 * rng.next_double();
    const double omega = 0.1 + 9.9 * rng.next_double();
    const WellBomb well(mass, omega);
    const double q = 4.0 * well.delta_p() * rng.next_double();
    const std::size_t n_max = 40;
    const KickSpectrum spectrum = excitation_spectrum(well, q, n_max);
    const auto oracle = test::kick_spectrum_overlap_oracle(mass, omega, q, n_max);
    for (std::size_t level = 0; level <= n_max; ++level) {
      worst_level = std::max(
          worst_level, std::abs(spectrum.probability[level] - oracle[level]));
    }
  }
  c.check(worst_level <= 1e-8,
          "Poisson vs overlap oracle: worst level error " + num(worst_level));

  const WellBomb unit_well(1.0, 1.0);
  c.check(stay_probability(unit_well, unit_well.delta_p() / 10.0) >= 0.9975,
          "stay probability at delta_p/10 below 0.9975");

  double worst_energy = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double mass = 0.2 + 5.0 * rng.next_double();
    const double omega = 0.2 + 5.0 * rng.next_double();
    const WellBomb well(mass, omega);
    const double q = (0.1 + 2.4 * rng.next_double()) * well.delta_p();
    const double lambda = q * q / (2.0 * mass * omega);
    const KickSpectrum spectrum =
        excitation_spectrum(well, q, suggested_n_max(lambda));
    const double expected = q * q / (2.0 * mass);
    worst_energy =
        std::max(worst_energy, std::abs(spectrum.mean_energy(omega) - expected) /
                                   std::max(1.0, expected));
  }
  c.check(worst_energy <= 1e-10,
          "kick energy conservation: worst relative error " + num(worst_energy));

  const double reference =
      well_trigger_bound(WellBomb(1.0, 1.0)) * WellBomb(1.0, 1.0).delta_x();
  double worst_bound = 0.0;
  for (const double mass : {1e-2, 1.0, 1e2}) {
    for (const double omega : {1e-2, 1.0, 1e2}) {
      const WellBomb well(mass, omega);
      const double product = well_trigger_bound(well) * well.delta_x();
      worst_bound = std::max(worst_bound, std::abs(product - reference) / reference);
    }
  }
  c.check(worst_bound <= 1e-12,
          "trigger bound * delta_x varies by " + num(worst_bound));
}

// 7. Optimizer vs a 1e6-point grid scan for 10 lambdas.
void criterion_7() {
  Criterion c(7, "reflectivity optimizer matches the grid-scan oracle");
  const double lambdas[10] = {0.0,  1e-4, 3e-4, 1e-3, 3e-3,
                              0.01, 0.03, 0.1,  0.3,  1.0};
  for (const double lambda : lambdas) {
    const OptimizeResult result = optimize_reflectivity(lambda);
    const double oracle = test::grid_scan_argmax(
        [lambda](double r) { return strategy_objective(r, lambda); }, 1e-6,
        1.0 - 1e-6, 1000001);
    c.check(std::abs(result.reflectivity - oracle) <= 1e-6,
            "lambda " + num(lambda) + ": |R_golden - R_grid| = " +
                num(std::abs(result.reflectivity - oracle)));
  }
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  void (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                          criterion_5, criterion_6, criterion_7};
  int id = 0;
  for (const auto criterion : criteria) {
    ++id;
    try {
      criterion();
    } catch (const std::exception& err) {
      std::printf("FAIL  criterion %d: unexpected exception: %s\n", id,
                  err.what());
      ++g_failures;
    }
  }
  const double total_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
  std::printf("%d of 7 criteria passed  (total %.0f ms)\n", 7 - g_failures,
              total_ms);
  return g_failures == 0 ? 0 : 1;
}
