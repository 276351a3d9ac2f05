#include "ifm/shadow_scatter.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ifm {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// FFTW plan creation/destruction is not thread-safe; execution on
// distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Complex> dft_forward(const std::vector<Complex>& in) {
  const std::size_t n = in.size();
  std::vector<Complex> out(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(
        static_cast<int>(n),
        reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
        reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD,
        FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

ApertureGrid::ApertureGrid(double width_in, std::size_t n_points_in,
                           double strip_width_in, double k_in_in)
    : width(width_in),
      n_points(n_points_in),
      strip_width(strip_width_in),
      k_in(k_in_in),
      strip_cells(0),
      strip_width_eff(0.0) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("ApertureGrid: width must be positive");
  }
  if (!(strip_width > 0.0) || !std::isfinite(strip_width)) {
    throw std::invalid_argument("ApertureGrid: strip_width must be positive");
  }
  if (!(k_in > 0.0) || !std::isfinite(k_in)) {
    throw std::invalid_argument("ApertureGrid: k_in must be positive");
  }
  if (!is_power_of_two(n_points) || n_points < 1024) {
    throw std::invalid_argument(
        "ApertureGrid: n_points must be a power of two >= 1024");
  }
  if (width < 64.0 * strip_width) {
    throw std::invalid_argument(
        "ApertureGrid: width must be >= 64 * strip_width so the mode "
        "spacing resolves the diffraction lobe");
  }
  if (!(dx() < strip_width / 16.0)) {
    throw std::invalid_argument(
        "ApertureGrid: grid spacing width/n_points must be < strip_width/16");
  }
  strip_cells = static_cast<std::size_t>(std::llround(strip_width / dx()));
  strip_width_eff = static_cast<double>(strip_cells) * dx();
}

std::vector<Complex> transmitted_field(const ApertureGrid& grid) {
  std::vector<Complex> field(grid.n_points, Complex{1.0, 0.0});
  const std::size_t first = (grid.n_points - grid.strip_cells) / 2;
  for (std::size_t j = first; j < first + grid.strip_cells; ++j) {
    field[j] = Complex{0.0, 0.0};
  }
  return field;
}

AngularSpectrum angular_spectrum(const ApertureGrid& grid) {
  const std::vector<Complex> field = transmitted_field(grid);
  const std::size_t n = grid.n_points;

  // Per-mode normalization 1/W: the incident state has unit probability
  // (1/n) sum |field_j|^2, so mode weights are |C_m / n|^2.
  double transmitted = 0.0;
  for (const Complex& f : field) transmitted += std::norm(f);
  transmitted /= static_cast<double>(n);

  const std::vector<Complex> transform = dft_forward(field);

  AngularSpectrum spectrum;
  spectrum.k_in = grid.k_in;
  spectrum.strip_width_eff = grid.strip_width_eff;
  spectrum.mode_index.resize(n);
  spectrum.k.resize(n);
  spectrum.probability.resize(n);

  const double k_unit = 2.0 * std::numbers::pi / grid.width;
  const double inv_n = 1.0 / static_cast<double>(n);
  const std::size_t half = n / 2;
  double scattered = 0.0;
  for (std::size_t row = 0; row < n; ++row) {
    // row 0 holds m = -n/2; row `half` holds the forward mode m = 0.
    const std::ptrdiff_t m =
        static_cast<std::ptrdiff_t>(row) - static_cast<std::ptrdiff_t>(half);
    const std::size_t fft_bin = static_cast<std::size_t>(
        (m + static_cast<std::ptrdiff_t>(n)) % static_cast<std::ptrdiff_t>(n));
    const double weight = std::norm(transform[fft_bin] * inv_n);
    spectrum.mode_index[row] = static_cast<int>(m);
    spectrum.k[row] = k_unit * static_cast<double>(m);
    spectrum.probability[row] = weight;
    if (m != 0) scattered += weight;
  }
  spectrum.p_absorbed = 1.0 - transmitted;
  spectrum.p_forward = spectrum.probability[half];
  spectrum.p_scattered = scattered;
  return spectrum;
}

MomentumStats momentum_transfer_stats(const AngularSpectrum& spectrum, double a) {
  if (!(spectrum.p_scattered > 0.0)) {
    throw std::invalid_argument(
        "momentum_transfer_stats: spectrum has no scattered weight");
  }
  // Group +-m pairs into point masses at |k|, sorted ascending.
  std::vector<std::pair<double, double>> masses;  // (|k|, weight)
  masses.reserve(spectrum.k.size());
  double mean_accum = 0.0;
  for (std::size_t i = 0; i < spectrum.k.size(); ++i) {
    if (spectrum.mode_index[i] == 0) continue;
    masses.emplace_back(std::abs(spectrum.k[i]), spectrum.probability[i]);
    mean_accum += spectrum.probability[i] * std::abs(spectrum.k[i]);
  }
  std::sort(masses.begin(), masses.end());
  std::vector<std::pair<double, double>> grouped;
  grouped.reserve(masses.size() / 2 + 1);
  for (const auto& [abs_k, weight] : masses) {
    if (!grouped.empty() && grouped.back().first == abs_k) {
      grouped.back().second += weight;
    } else {
      grouped.emplace_back(abs_k, weight);
    }
  }

  // Midpoint-interpolated weighted median: treat each mass as sitting at
  // the center of its cumulative slab, so the estimate varies smoothly
  // with the grid instead of jumping by one mode spacing.
  MomentumStats stats;
  const double half_weight = 0.5 * spectrum.p_scattered;
  double below = 0.0;
  double prev_mid = 0.0;
  double prev_k = grouped.front().first;
  stats.median_k = grouped.back().first;
  for (std::size_t i = 0; i < grouped.size(); ++i) {
    const double mid = below + 0.5 * grouped[i].second;
    if (mid >= half_weight) {
      if (i == 0) {
        stats.median_k = grouped[i].first;
      } else {
        const double fraction = (half_weight - prev_mid) / (mid - prev_mid);
        stats.median_k =
            prev_k + fraction * (grouped[i].first - prev_k);
      }
      break;
    }
    below += grouped[i].second;
    prev_mid = mid;
    prev_k = grouped[i].first;
  }

  stats.mean_k = mean_accum / spectrum.p_scattered;
  stats.median_k_times_a = stats.median_k * a;
  stats.mean_k_times_a = stats.mean_k * a;
  return stats;
}

ScatterOutcome classify_outcomes(const AngularSpectrum& spectrum,
                                 const BombTrigger& trigger) {
  ScatterOutcome outcome;
  outcome.p_inconclusive = spectrum.p_forward;
  double safe = 0.0;
  double loud = 0.0;
  for (std::size_t i = 0; i < spectrum.k.size(); ++i) {
    if (spectrum.mode_index[i] == 0) continue;
    if (std::abs(spectrum.k[i]) <= trigger.p_th) {
      safe += spectrum.probability[i];
    } else {
      loud += spectrum.probability[i];
    }
  }
  outcome.p_detect_safe = safe;
  outcome.p_boom = spectrum.p_absorbed + loud;
  return outcome;
}

}  // namespace ifm
