// shadow_scatter.hpp
// Scalar 1-D transverse model of shadow scattering: a unit plane wave on
// a periodic window of width W meets a perfectly absorbing strip of width
// a, and the far field over discrete transverse modes k_m = 2 pi m / W
// yields absorption / forward / small-angle probabilities together with
// the momentum-transfer distribution. Babinet's principle shows up as
// p_scattered ~ p_absorbed for a << W. hbar = 1.

#pragma once

#include <cstddef>
#include <vector>

#include "ifm/mode_state.hpp"  // Complex
#include "ifm/trigger_model.hpp"

namespace ifm {

// Transverse grid with a centered absorbing strip. Constructor enforces:
// width, strip_width, k_in positive; n_points a power of two >= 1024;
// width >= 64 * strip_width (mode spacing resolves the diffraction lobe);
// grid spacing < strip_width / 16 (grid resolves the strip). The strip is
// snapped to a whole number of cells; strip_width_eff = strip_cells * dx
// is what every closed form refers to.
struct ApertureGrid {
  ApertureGrid(double width, std::size_t n_points, double strip_width,
               double k_in);

  double width;
  std::size_t n_points;
  double strip_width;       // requested
  double k_in;              // incident wavevector magnitude
  std::size_t strip_cells;
  double strip_width_eff;   // snapped to the grid

  double dx() const { return width / static_cast<double>(n_points); }
};

// Probability per transverse mode, ordered by signed mode index
// m = -n/2 .. n/2 - 1 (k = 2 pi m / width); entry n/2 is the forward
// (m = 0) mode. p_absorbed + p_forward + p_scattered = 1 within 1e-9.
struct AngularSpectrum {
  std::vector<int> mode_index;
  std::vector<double> k;            // transverse momentum per mode
  std::vector<double> probability;
  double p_absorbed = 0.0;
  double p_forward = 0.0;           // zero-transverse-momentum mode
  double p_scattered = 0.0;         // everything else
  double k_in = 0.0;
  double strip_width_eff = 0.0;
};

// Probability split seen by a momentum-threshold trigger:
// forward photons teach nothing, sub-threshold deflections detect the
// object safely, absorption or a super-threshold deflection fires it.
struct ScatterOutcome {
  double p_inconclusive = 0.0;
  double p_detect_safe = 0.0;
  double p_boom = 0.0;
};

struct MomentumStats {
  // Probability-weighted median of |k| over scattered modes, with
  // midpoint interpolation so the estimate varies smoothly with the
  // grid. The mean grows logarithmically with resolution (the squared
  // Dirichlet tail falls off as 1/k^2); only the median is grid-stable.
  double median_k = 0.0;
  double mean_k = 0.0;
  double median_k_times_a = 0.0;  // dimensionless products
  double mean_k_times_a = 0.0;
};

// Unit plane wave with the strip cells zeroed (perfect absorber).
std::vector<Complex> transmitted_field(const ApertureGrid& grid);

// Discrete Fourier transform of the transmitted field. Closed forms:
// p_absorbed = a/W, p_forward = ((W-a)/W)^2, p_scattered = a(W-a)/W^2
// with a = strip_width_eff; the scattered shape is the squared Dirichlet
// kernel of the strip (Babinet complement).
AngularSpectrum angular_spectrum(const ApertureGrid& grid);

// Statistics of |k| over scattered modes, weighted by probability, plus
// the dimensionless products with the strip width a. Throws if the
// spectrum has no scattered weight.
MomentumStats momentum_transfer_stats(const AngularSpectrum& spectrum, double a);

// Partition into inconclusive / detect-safe / boom: momentum transfer to
// the object for a scattered mode is |k|, compared with trigger.p_th.
ScatterOutcome classify_outcomes(const AngularSpectrum& spectrum,
                                 const BombTrigger& trigger);

}  // namespace ifm
