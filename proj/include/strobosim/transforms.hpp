#pragma once

#include "strobosim/state.hpp"

namespace strobosim {

// Position-basis density matrix from a Wigner function:
//   rho(x+y, x-y) = integral e^{+ipy} W(x, p) dp
// evaluated on the square (x, x') grid. Exact (unitary) when the grid is
// critically sampled; spectrally accurate for states whose coherences decay
// within |x - x'|/2 <= half_extent otherwise.
PositionDensityMatrix wigner_to_density(const WignerState& state);

// Inverse map, W(x, p) = (1/2pi) integral e^{-ipy} rho(x+y, x-y) dy, using the
// on-grid anti-diagonals of rho. Errors if the input hermiticity defect
// exceeds 1e-8 or the reconstructed field has imaginary residue above 1e-10.
WignerState density_to_wigner(const PositionDensityMatrix& rho);

// Instantaneous nonlinear pulse of the given gain and order k on the density
// matrix: a pure phase, exp(+i (gain/2) (x^k - x'^k)) per element, so that the
// induced phase-space map is p -> p + k * gain * x^{k-1}. Diagonal and trace
// are untouched. Warns (aliasing guard) when |gain| * max|x|^k * spacing > pi/2.
PositionDensityMatrix nonlinear_kick(const PositionDensityMatrix& rho, double pulse_gain,
                                     int order = 3);

// Same pulse applied directly to a Wigner function via a per-row split step
// (transform p to the coherence coordinate, multiply the phase, transform
// back). Exactly norm- and x-marginal-preserving; used in the protocol loop.
WignerState nonlinear_kick_wigner(const WignerState& state, double pulse_gain,
                                  int order = 3);

// Harmonic phase-space rotation by angle (radians, reduced mod 2pi):
//   W_f(x, p) = W_i(x cos t - p sin t, p cos t + x sin t).
// Exact quadrant permutations plus an FFT three-shear for the residual.
WignerState rotate(const WignerState& state, double angle);

// One period of thermal damping: convolution with the isotropic Gaussian
// kernel of the given variance, applied as a spectral multiplier.
WignerState damp(const WignerState& state, const ThermalKernelParams& kernel);

}  // namespace strobosim
