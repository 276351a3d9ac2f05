#include "ifm/mode_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ifm {

namespace {

constexpr double kClosureTolerance = 1e-12;

void check_mode(const ModeState& state, std::size_t mode, const char* what) {
  if (mode >= state.n_modes()) {
    throw std::out_of_range(std::string(what) + ": unknown mode label " +
                            std::to_string(mode) + " (state has " +
                            std::to_string(state.n_modes()) + " modes)");
  }
}

}  // namespace

ModeState ModeState::single_photon(std::size_t n_modes, std::size_t mode) {
  if (n_modes == 0 || mode >= n_modes) {
    throw std::out_of_range("single_photon: mode " + std::to_string(mode) +
                            " outside layout of " + std::to_string(n_modes) +
                            " modes");
  }
  std::vector<Complex> amps(n_modes, Complex{0.0, 0.0});
  amps[mode] = Complex{1.0, 0.0};
  return ModeState(std::move(amps));
}

ModeState::ModeState(std::vector<Complex> amplitudes, double p_absorbed)
    : amplitudes_(std::move(amplitudes)), p_absorbed_(p_absorbed) {
  if (amplitudes_.empty()) {
    throw std::invalid_argument("ModeState: no modes");
  }
  if (!(p_absorbed_ >= -kClosureTolerance &&
        p_absorbed_ <= 1.0 + kClosureTolerance)) {
    throw std::invalid_argument("ModeState: p_absorbed outside [0, 1]");
  }
  if (std::abs(total_probability() - 1.0) > kClosureTolerance) {
    throw std::invalid_argument(
        "ModeState: sum |amplitude|^2 + p_absorbed does not close to 1");
  }
}

const Complex& ModeState::amplitude(std::size_t mode) const {
  check_mode(*this, mode, "amplitude");
  return amplitudes_[mode];
}

double ModeState::mode_probability(std::size_t mode) const {
  check_mode(*this, mode, "mode_probability");
  return std::norm(amplitudes_[mode]);
}

double ModeState::total_probability() const {
  double total = p_absorbed_;
  for (const Complex& a : amplitudes_) {
    total += std::norm(a);
  }
  return total;
}

std::array<Complex, 4> beamsplitter_matrix(double reflectivity) {
  if (!(reflectivity >= 0.0 && reflectivity <= 1.0)) {
    throw std::invalid_argument("beamsplitter_matrix: R outside [0, 1]");
  }
  const double t = std::sqrt(1.0 - reflectivity);
  const double r = std::sqrt(reflectivity);
  return {Complex{t, 0.0}, Complex{0.0, r}, Complex{0.0, r}, Complex{t, 0.0}};
}

ModeState apply_beamsplitter(const ModeState& state, const BeamSplitterSpec& bs) {
  check_mode(state, bs.mode_a, "apply_beamsplitter");
  check_mode(state, bs.mode_b, "apply_beamsplitter");
  if (bs.mode_a == bs.mode_b) {
    throw std::invalid_argument("apply_beamsplitter: mode pair must be distinct");
  }
  const auto m = beamsplitter_matrix(bs.reflectivity);
  std::vector<Complex> amps = state.amplitudes();
  const Complex u = amps[bs.mode_a];
  const Complex v = amps[bs.mode_b];
  amps[bs.mode_a] = m[0] * u + m[1] * v;
  amps[bs.mode_b] = m[2] * u + m[3] * v;
  return ModeState(std::move(amps), state.p_absorbed());
}

ModeState apply_phase(const ModeState& state, std::size_t mode, double phi) {
  check_mode(state, mode, "apply_phase");
  std::vector<Complex> amps = state.amplitudes();
  amps[mode] *= std::polar(1.0, phi);
  return ModeState(std::move(amps), state.p_absorbed());
}

ModeState apply_absorber(const ModeState& state, const AbsorberSpec& absorber) {
  check_mode(state, absorber.mode, "apply_absorber");
  std::vector<Complex> amps = state.amplitudes();
  const double captured = std::norm(amps[absorber.mode]);
  amps[absorber.mode] = Complex{0.0, 0.0};
  return ModeState(std::move(amps), state.p_absorbed() + captured);
}

}  // namespace ifm
