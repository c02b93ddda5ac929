#include "strobosim/analysis.hpp"

#include <cmath>
#include <sstream>

#include "strobosim/errors.hpp"
#include "strobosim/kernels.hpp"

namespace strobosim {

namespace {

std::vector<double> axis_power(const GridSpec& grid, int power) {
  auto axis = coordinate_axis(grid);
  for (double& v : axis) {
    double acc = 1.0;
    for (int k = 0; k < power; ++k) acc *= v;
    v = acc;
  }
  return axis;
}

// Raw weighted grid sum: sum_i wx[i] sum_j wp[j] W[i][j], with a fixed
// pairwise reduction tree in both directions.
double weighted_sum(const WignerState& state, const std::vector<double>& wx,
                    const std::vector<double>& wp) {
  const int n = state.grid.n_points;
  std::vector<double> row_sums(n);
#pragma omp parallel
  {
    std::vector<double> scratch(n);
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      const double* row = state.values.data() + static_cast<size_t>(i) * n;
      for (int j = 0; j < n; ++j) scratch[j] = wp[j] * row[j];
      row_sums[i] = wx[i] * kernels::pairwise_sum(scratch);
    }
  }
  return kernels::pairwise_sum(row_sums);
}

struct Sigma3Moments {
  double mean_p, mean_x2, var_p, var_x2, cov_p_x2;
};

Sigma3Moments sigma3_moments(const WignerState& state) {
  const double m00 = moment(state, 0, 0);
  if (!(std::abs(m00) > 1e-12)) {
    throw numeric_error("analysis: state mass is numerically zero");
  }
  Sigma3Moments m{};
  m.mean_p = moment(state, 0, 1);
  m.mean_x2 = moment(state, 2, 0);
  const double p2 = moment(state, 0, 2);
  const double x4 = moment(state, 4, 0);
  const double x2p = moment(state, 2, 1);
  m.var_p = p2 - m.mean_p * m.mean_p;
  m.var_x2 = x4 - m.mean_x2 * m.mean_x2;
  m.cov_p_x2 = x2p - m.mean_p * m.mean_x2;
  return m;
}

double sigma3_from(const Sigma3Moments& m, double lambda) {
  return m.var_p - 2.0 * lambda * m.cov_p_x2 + lambda * lambda * m.var_x2;
}

}  // namespace

double moment(const WignerState& state, int fx_power, int fp_power) {
  if (fx_power < 0 || fp_power < 0) {
    throw validation_error("moment: powers must be nonnegative");
  }
  if (fx_power + fp_power > 6) {
    throw validation_error("moment: total order must not exceed 6 (grid truncation dominates)");
  }
  const double spacing2 = state.grid.spacing * state.grid.spacing;
  const auto wx = axis_power(state.grid, fx_power);
  const auto wp = axis_power(state.grid, fp_power);
  const double raw = weighted_sum(state, wx, wp) * spacing2;
  if (fx_power == 0 && fp_power == 0) return raw;
  const auto ones_x = axis_power(state.grid, 0);
  const double mass = weighted_sum(state, ones_x, ones_x) * spacing2;
  return raw / mass;
}

double nonlinear_variance(const WignerState& state, double lambda) {
  return sigma3_from(sigma3_moments(state), lambda);
}

OptimalLambda optimal_lambda(const WignerState& state) {
  const Sigma3Moments m = sigma3_moments(state);
  if (!(m.var_x2 > 1e-12)) {
    throw numeric_error("optimal_lambda: Var(x^2) is degenerate (state collapsed in x)");
  }
  OptimalLambda result;
  result.lambda_star = m.cov_p_x2 / m.var_x2;
  result.sigma3_min = sigma3_from(m, result.lambda_star);
  return result;
}

SqueezingReport squeezing_report(const WignerState& state, LambdaRange range) {
  if (!(range.lo < range.hi) || range.count < 2) {
    throw validation_error("squeezing_report: need lo < hi and count >= 2");
  }
  const Sigma3Moments m = sigma3_moments(state);
  if (!(m.var_x2 > 1e-12)) {
    throw numeric_error("squeezing_report: Var(x^2) is degenerate (state collapsed in x)");
  }

  SqueezingReport report;
  report.lambda_samples.reserve(range.count);
  const double step = (range.hi - range.lo) / (range.count - 1);
  for (int k = 0; k < range.count; ++k) {
    const double lambda = range.lo + k * step;
    const double value = sigma3_from(m, lambda);
    if (value < -1e-9) {
      std::ostringstream msg;
      msg << "squeezing_report: sigma3(" << lambda << ") = " << value
          << " is negative beyond tolerance; grid data is corrupt";
      throw numeric_error(msg.str());
    }
    report.lambda_samples.emplace_back(lambda, value);
  }
  report.lambda_star = m.cov_p_x2 / m.var_x2;
  report.sigma3_min = sigma3_from(m, report.lambda_star);
  report.vacuum_threshold_at_star = 1.0 + 2.0 * report.lambda_star * report.lambda_star;
  report.beats_vacuum = report.sigma3_min < report.vacuum_threshold_at_star;
  report.beats_shot_noise = report.sigma3_min < 1.0;
  return report;
}

NegativityReport negativity_report(const WignerState& state) {
  const int n = state.grid.n_points;
  const double spacing2 = state.grid.spacing * state.grid.spacing;

  NegativityReport report;
  report.min_value = state.values[0];
  std::vector<double> neg_rows(n);
#pragma omp parallel
  {
    double local_min = state.values[0];
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      const double* row = state.values.data() + static_cast<size_t>(i) * n;
      double neg = 0.0;
      for (int j = 0; j < n; ++j) {
        if (row[j] < local_min) local_min = row[j];
        if (row[j] < 0.0) neg -= row[j];
      }
      neg_rows[i] = neg;
    }
#pragma omp critical
    {
      if (local_min < report.min_value) report.min_value = local_min;
    }
  }
  report.negativity_volume = kernels::pairwise_sum(neg_rows) * spacing2;

  const auto axis = coordinate_axis(state.grid);
  report.cut.reserve(n);
  for (int j = 0; j < n; ++j) {
    report.cut.emplace_back(axis[j], state.at(n / 2, j));
  }
  return report;
}

}  // namespace strobosim
