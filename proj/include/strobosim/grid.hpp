#pragma once

#include <vector>

namespace strobosim {

// Uniform square grid over [-L, L) per axis with the zero coordinate exactly
// on a sample. Shared by the Wigner and position-basis representations.
// spacing == 2 * half_extent / n_points.
struct GridSpec {
  int n_points = 0;
  double half_extent = 0.0;
  double spacing = 0.0;

  bool operator==(const GridSpec&) const = default;
};

bool is_power_of_two(int v);

// Builds a GridSpec without the make_grid size floor. Still enforces the
// power-of-two and conjugate-coverage requirements. Meant for tests and
// internal callers that want tiny grids.
GridSpec grid_spec(int n_points, double half_extent);

// Validated factory: n_points a power of two >= 64, half_extent > 0, and
// pi/spacing >= half_extent so the conjugate grid covers at least the same
// half-extent (otherwise representation round trips alias).
GridSpec make_grid(int n_points, double half_extent);

// Sample i sits at (i - n/2) * spacing; entry n/2 is exactly 0.
std::vector<double> coordinate_axis(const GridSpec& grid);

// Centered conjugate axis: entry k is (k - n/2) * 2*pi / (n * spacing).
std::vector<double> frequency_axis(const GridSpec& grid);

// Grid with spacing^2 == 2*pi/n, the boundary case of the conjugate-coverage
// inequality. On such a grid the conjugate axis coincides with the coordinate
// axis and the position-basis density matrix carries exactly the same
// information as the Wigner function (lossless round trips for any state).
GridSpec critically_sampled_grid(int n_points);

}  // namespace strobosim
