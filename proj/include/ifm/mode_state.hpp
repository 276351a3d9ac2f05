// mode_state.hpp
// Single-photon amplitudes over a finite set of optical modes, plus the
// passive elements (beam splitters, phase shifters, absorbers) acting on
// them. Natural units hbar = 1 throughout the library.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace ifm {

using Complex = std::complex<double>;

// Complex amplitude per mode plus the probability already absorbed.
// Invariant: sum |amplitude|^2 + p_absorbed == 1 (within 1e-12), and
// p_absorbed never decreases under element application.
// States are immutable; every element returns a new value, so states are
// safe to share across threads.
class ModeState {
 public:
  // Photon occupying a single mode of an n-mode layout.
  static ModeState single_photon(std::size_t n_modes, std::size_t mode);

  // Arbitrary amplitudes; throws std::invalid_argument unless
  // sum |a|^2 + p_absorbed closes to 1 within 1e-12.
  explicit ModeState(std::vector<Complex> amplitudes, double p_absorbed = 0.0);

  std::size_t n_modes() const { return amplitudes_.size(); }
  const std::vector<Complex>& amplitudes() const { return amplitudes_; }
  const Complex& amplitude(std::size_t mode) const;
  double p_absorbed() const { return p_absorbed_; }

  // |amplitude(mode)|^2
  double mode_probability(std::size_t mode) const;
  // sum |a|^2 + p_absorbed; equals 1 up to rounding.
  double total_probability() const;

 private:
  std::vector<Complex> amplitudes_;
  double p_absorbed_;
};

// Two-mode coupler with reflectivity R in [0, 1]. Convention: transmission
// amplitude real t = sqrt(1-R), reflection i*r with r = sqrt(R), which
// makes the 2x2 matrix [[t, ir], [ir, t]] unitary for every R.
struct BeamSplitterSpec {
  double reflectivity = 0.5;
  std::size_t mode_a = 0;
  std::size_t mode_b = 1;
};

// Perfect absorber on one mode (the blocked arm).
struct AbsorberSpec {
  std::size_t mode = 0;
};

// (u, v) -> (t*u + i*r*v, i*r*u + t*v) on the coupled mode pair; all
// other amplitudes and p_absorbed unchanged. Throws std::out_of_range for
// an unknown mode, std::invalid_argument for R outside [0, 1] or a == b.
ModeState apply_beamsplitter(const ModeState& state, const BeamSplitterSpec& bs);

// Multiplies the amplitude on `mode` by exp(i*phi).
ModeState apply_phase(const ModeState& state, std::size_t mode, double phi);

// Books |amplitude|^2 into p_absorbed and zeroes the amplitude. Applying
// it twice is the same as applying it once.
ModeState apply_absorber(const ModeState& state, const AbsorberSpec& absorber);

// The 2x2 matrix {{m00, m01}, {m10, m11}} induced by a splitter of the
// given reflectivity, row-major; exposed for unitarity checks.
std::array<Complex, 4> beamsplitter_matrix(double reflectivity);

}  // namespace ifm
