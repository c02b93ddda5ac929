#include "strobosim/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "strobosim/errors.hpp"

namespace strobosim {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

GridSpec grid_spec(int n_points, double half_extent) {
  if (!is_power_of_two(n_points) || n_points < 4) {
    throw validation_error("grid: n_points must be a power of two >= 4, got " +
                           std::to_string(n_points));
  }
  if (!(half_extent > 0.0) || !std::isfinite(half_extent)) {
    throw validation_error("grid: half_extent must be positive and finite");
  }
  GridSpec g;
  g.n_points = n_points;
  g.half_extent = half_extent;
  g.spacing = 2.0 * half_extent / n_points;
  if (std::numbers::pi / g.spacing < g.half_extent) {
    throw validation_error(
        "grid: conjugate coverage violated (pi/spacing = " +
        std::to_string(std::numbers::pi / g.spacing) + " < half_extent = " +
        std::to_string(half_extent) + "); representation round trips would alias");
  }
  return g;
}

GridSpec make_grid(int n_points, double half_extent) {
  if (!is_power_of_two(n_points)) {
    throw validation_error("make_grid: n_points must be a power of two, got " +
                           std::to_string(n_points));
  }
  if (n_points < 64) {
    throw validation_error("make_grid: n_points must be >= 64, got " +
                           std::to_string(n_points));
  }
  return grid_spec(n_points, half_extent);
}

std::vector<double> coordinate_axis(const GridSpec& grid) {
  std::vector<double> axis(grid.n_points);
  const int half = grid.n_points / 2;
  for (int i = 0; i < grid.n_points; ++i) {
    axis[i] = static_cast<double>(i - half) * grid.spacing;
  }
  return axis;
}

std::vector<double> frequency_axis(const GridSpec& grid) {
  std::vector<double> axis(grid.n_points);
  const int half = grid.n_points / 2;
  const double step = 2.0 * std::numbers::pi / (grid.n_points * grid.spacing);
  for (int k = 0; k < grid.n_points; ++k) {
    axis[k] = static_cast<double>(k - half) * step;
  }
  return axis;
}

GridSpec critically_sampled_grid(int n_points) {
  if (!is_power_of_two(n_points) || n_points < 4) {
    throw validation_error("grid: n_points must be a power of two >= 4");
  }
  const double spacing = std::sqrt(2.0 * std::numbers::pi / n_points);
  GridSpec g;
  g.n_points = n_points;
  g.spacing = spacing;
  g.half_extent = 0.5 * n_points * spacing;
  return g;
}

}  // namespace strobosim
