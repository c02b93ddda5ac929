#pragma once

#include "strobosim/state.hpp"

namespace strobosim {

// Squeezed thermal state, W = exp(-[(x/s)^2 + (p s)^2]/(2(2n0+1))) / (2 pi (2n0+1)),
// renormalized on the grid. Errors if the analytic out-of-grid tail mass
// exceeds 1e-6 (truncation would corrupt the normalization budget).
WignerState squeezed_thermal(const GridSpec& grid, const SqueezedThermalParams& params);

// Same state in the position basis:
// rho(x, x') = exp(-(x+x')^2/(8 Vx) - Vp (x-x')^2 / 8) / sqrt(2 pi Vx).
PositionDensityMatrix squeezed_thermal_density(const GridSpec& grid,
                                               const SqueezedThermalParams& params);

// Idealized cubic resource state, W proportional to
// Ai[(4/(3 gamma))^{1/3} (3 gamma x^2 - p)], normalized on the grid.
// Errors if the grid cannot resolve the fastest oscillation at the edge.
WignerState ideal_cubic_wigner(const GridSpec& grid, double gamma);

// Nonlinear phase state built without any splitting, rotation or damping:
// analytic squeezed thermal density matrix, one phase multiplication of the
// full gain, conversion back to a Wigner function. Reference for the
// stroboscopic protocol.
WignerState exact_nonlinear_gaussian(const GridSpec& grid,
                                     const SqueezedThermalParams& params,
                                     double gain, int order = 3);

}  // namespace strobosim
