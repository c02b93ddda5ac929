#pragma once

#include <complex>
#include <string>
#include <vector>

#include "strobosim/grid.hpp"

namespace strobosim {

// Real quasiprobability field W(x, p) sampled on the grid, row-major with the
// x index major. Normalized so that sum(values) * spacing^2 == 1.
struct WignerState {
  GridSpec grid;
  std::vector<double> values;
  std::string metadata;

  double& at(int ix, int ip) { return values[static_cast<size_t>(ix) * grid.n_points + ip]; }
  double at(int ix, int ip) const { return values[static_cast<size_t>(ix) * grid.n_points + ip]; }
};

// Complex field rho(x, x') sampled on the same axis for both indices,
// row-major with the x index major. Trace normalization: sum(diag) * spacing == 1.
struct PositionDensityMatrix {
  GridSpec grid;
  std::vector<std::complex<double>> values;
  std::string metadata;

  std::complex<double>& at(int ix, int ixp) {
    return values[static_cast<size_t>(ix) * grid.n_points + ixp];
  }
  std::complex<double> at(int ix, int ixp) const {
    return values[static_cast<size_t>(ix) * grid.n_points + ixp];
  }
};

// Initial-state parameters: thermal occupation n0 >= 0 and squeezing factor
// s > 0. Var(x) = s^2 (2 n0 + 1), Var(p) = (2 n0 + 1) / s^2.
struct SqueezedThermalParams {
  double n0 = 0.0;
  double s = 1.0;

  void validate() const;
  double var_x() const { return s * s * (2.0 * n0 + 1.0); }
  double var_p() const { return (2.0 * n0 + 1.0) / (s * s); }
};

// Gaussian kernel variance applied once per mechanical period.
struct ThermalKernelParams {
  double kernel_variance = 0.0;

  void validate() const;
  // kernel_variance = (2 n_th + 1) * 2 pi * (eta_m / Omega_m).
  static ThermalKernelParams from_bath(double n_th, double eta_over_omega);
};

double total_mass(const WignerState& state);           // sum W * spacing^2
void normalize(WignerState& state);                    // scales to unit mass
double trace_real(const PositionDensityMatrix& rho);   // sum diag * spacing
double hermiticity_defect(const PositionDensityMatrix& rho);  // Linf |rho - rho^dag|
std::vector<double> x_marginal(const WignerState& state);     // sum_p W * spacing
std::vector<double> p_marginal(const WignerState& state);     // sum_x W * spacing

}  // namespace strobosim
