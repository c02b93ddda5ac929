#include "strobosim/state.hpp"

#include <cmath>
#include <numbers>

#include "strobosim/errors.hpp"
#include "strobosim/kernels.hpp"

namespace strobosim {

void SqueezedThermalParams::validate() const {
  if (!(n0 >= 0.0) || !std::isfinite(n0)) {
    throw validation_error("initial state: n0 must be >= 0");
  }
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw validation_error("initial state: squeezing factor s must be > 0");
  }
}

void ThermalKernelParams::validate() const {
  if (!(kernel_variance >= 0.0) || !std::isfinite(kernel_variance)) {
    throw validation_error("thermal kernel: kernel_variance must be >= 0");
  }
}

ThermalKernelParams ThermalKernelParams::from_bath(double n_th, double eta_over_omega) {
  if (!(n_th >= 0.0) || !(eta_over_omega >= 0.0)) {
    throw validation_error("thermal kernel: n_th and eta_m/Omega_m must be >= 0");
  }
  ThermalKernelParams params;
  params.kernel_variance = (2.0 * n_th + 1.0) * 2.0 * std::numbers::pi * eta_over_omega;
  return params;
}

double total_mass(const WignerState& state) {
  const double spacing2 = state.grid.spacing * state.grid.spacing;
  return kernels::pairwise_sum_parallel(state.values) * spacing2;
}

void normalize(WignerState& state) {
  const double mass = total_mass(state);
  if (!(std::abs(mass) > 0.0) || !std::isfinite(mass)) {
    throw numeric_error("normalize: state has zero or non-finite mass");
  }
  const double scale = 1.0 / mass;
  for (double& v : state.values) v *= scale;
}

double trace_real(const PositionDensityMatrix& rho) {
  const int n = rho.grid.n_points;
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = rho.at(i, i).real();
  return kernels::pairwise_sum(diag) * rho.grid.spacing;
}

double hermiticity_defect(const PositionDensityMatrix& rho) {
  const int n = rho.grid.n_points;
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double d = std::abs(rho.at(i, j) - std::conj(rho.at(j, i)));
      if (d > worst) worst = d;
    }
  }
  return worst;
}

std::vector<double> x_marginal(const WignerState& state) {
  const int n = state.grid.n_points;
  std::vector<double> marginal(n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    marginal[i] = kernels::pairwise_sum(
                      std::span<const double>(state.values.data() + static_cast<size_t>(i) * n, n)) *
                  state.grid.spacing;
  }
  return marginal;
}

std::vector<double> p_marginal(const WignerState& state) {
  const int n = state.grid.n_points;
  std::vector<double> marginal(n, 0.0);
  std::vector<double> column(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) column[i] = state.at(i, j);
    marginal[j] = kernels::pairwise_sum(column) * state.grid.spacing;
  }
  return marginal;
}

}  // namespace strobosim
