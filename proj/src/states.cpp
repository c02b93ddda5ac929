#include "strobosim/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "strobosim/airy.hpp"
#include "strobosim/errors.hpp"
#include "strobosim/transforms.hpp"

namespace strobosim {

namespace {

// Two-sided Gaussian tail mass outside [-L, L] for standard deviation sigma.
double tail_mass(double half_extent, double sigma) {
  return std::erfc(half_extent / (sigma * std::numbers::sqrt2));
}

void check_gaussian_fits(const GridSpec& grid, const SqueezedThermalParams& params) {
  const double sigma_x = std::sqrt(params.var_x());
  const double sigma_p = std::sqrt(params.var_p());
  const double lost = tail_mass(grid.half_extent, sigma_x) + tail_mass(grid.half_extent, sigma_p);
  if (lost > 1e-6) {
    std::ostringstream msg;
    msg << "squeezed_thermal: state does not fit the grid (truncated mass " << lost
        << " > 1e-6 for s=" << params.s << ", n0=" << params.n0
        << ", half_extent=" << grid.half_extent << "); enlarge the grid";
    throw validation_error(msg.str());
  }
}

std::string mass_note(double mass) {
  std::ostringstream os;
  os.precision(15);
  os << " in_grid_mass_before_normalization=" << mass;
  return os.str();
}

}  // namespace

WignerState squeezed_thermal(const GridSpec& grid, const SqueezedThermalParams& params) {
  params.validate();
  check_gaussian_fits(grid, params);

  const int n = grid.n_points;
  const auto axis = coordinate_axis(grid);
  const double denom = 2.0 * (2.0 * params.n0 + 1.0);
  const double norm = 1.0 / (2.0 * std::numbers::pi * (2.0 * params.n0 + 1.0));

  WignerState state;
  state.grid = grid;
  state.values.resize(static_cast<size_t>(n) * n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const double xs = axis[i] / params.s;
    for (int j = 0; j < n; ++j) {
      const double ps = axis[j] * params.s;
      state.at(i, j) = norm * std::exp(-(xs * xs + ps * ps) / denom);
    }
  }
  const double mass = total_mass(state);
  normalize(state);
  std::ostringstream meta;
  meta << "squeezed_thermal s=" << params.s << " n0=" << params.n0 << mass_note(mass);
  state.metadata = meta.str();
  return state;
}

PositionDensityMatrix squeezed_thermal_density(const GridSpec& grid,
                                               const SqueezedThermalParams& params) {
  params.validate();
  check_gaussian_fits(grid, params);

  const int n = grid.n_points;
  const auto axis = coordinate_axis(grid);
  const double var_x = params.var_x();
  const double var_p = params.var_p();
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * var_x);

  PositionDensityMatrix rho;
  rho.grid = grid;
  rho.values.resize(static_cast<size_t>(n) * n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double sum = axis[i] + axis[j];
      const double diff = axis[i] - axis[j];
      rho.at(i, j) = norm * std::exp(-sum * sum / (8.0 * var_x) - var_p * diff * diff / 8.0);
    }
  }
  std::ostringstream meta;
  meta << "squeezed_thermal_density s=" << params.s << " n0=" << params.n0;
  rho.metadata = meta.str();
  return rho;
}

WignerState ideal_cubic_wigner(const GridSpec& grid, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw validation_error("ideal_cubic_wigner: gamma must be > 0");
  }
  const double c = std::cbrt(4.0 / (3.0 * gamma));

  // The fastest on-axis oscillation sits at (x=0, p=+-L) where the Airy
  // argument reaches -c L; its local period along p is 2 pi / (c^{3/2} sqrt(L)).
  const double edge_period = 2.0 * std::numbers::pi / (std::pow(c, 1.5) * std::sqrt(grid.half_extent));
  if (edge_period < 4.0 * grid.spacing) {
    std::ostringstream msg;
    msg << "ideal_cubic_wigner: grid cannot resolve the edge oscillation (period "
        << edge_period << " < 4 * spacing = " << 4.0 * grid.spacing
        << " for gamma=" << gamma << "); refine the grid";
    throw validation_error(msg.str());
  }

  const int n = grid.n_points;
  const auto axis = coordinate_axis(grid);
  WignerState state;
  state.grid = grid;
  state.values.resize(static_cast<size_t>(n) * n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const double ridge = 3.0 * gamma * axis[i] * axis[i];
    for (int j = 0; j < n; ++j) {
      state.at(i, j) = airy_ai(c * (ridge - axis[j]));
    }
  }
  const double mass = total_mass(state);
  normalize(state);
  std::ostringstream meta;
  meta << "ideal_cubic_wigner gamma=" << gamma << mass_note(mass);
  state.metadata = meta.str();
  return state;
}

WignerState exact_nonlinear_gaussian(const GridSpec& grid,
                                     const SqueezedThermalParams& params,
                                     double gain, int order) {
  if (order < 3) {
    throw validation_error("exact_nonlinear_gaussian: order must be >= 3");
  }
  if (!std::isfinite(gain)) {
    throw validation_error("exact_nonlinear_gaussian: gain must be finite");
  }
  PositionDensityMatrix rho = squeezed_thermal_density(grid, params);
  if (gain != 0.0) rho = nonlinear_kick(rho, gain, order);
  WignerState state = density_to_wigner(rho);
  const double mass = total_mass(state);
  normalize(state);
  std::ostringstream meta;
  meta << "exact_nonlinear_gaussian s=" << params.s << " n0=" << params.n0
       << " gain=" << gain << " order=" << order << mass_note(mass);
  state.metadata = meta.str();
  return state;
}

}  // namespace strobosim
