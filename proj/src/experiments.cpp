#include "strobosim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "strobosim/errors.hpp"
#include "strobosim/states.hpp"

namespace strobosim {

namespace {

// Runs fn(cell) for every cell index on a bounded worker pool. Each worker
// limits its own OpenMP team so jobs * threads stays near the machine size.
void parallel_cells(int count, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int c = 0; c < count; ++c) fn(c);
    return;
  }
#ifdef _OPENMP
  const int machine = omp_get_max_threads();
  const int per_cell = std::max(1, machine / jobs);
#endif
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&]() {
#ifdef _OPENMP
      omp_set_num_threads(per_cell);
#endif
      for (int c = next.fetch_add(1); c < count; c = next.fetch_add(1)) fn(c);
    });
  }
  for (auto& worker : workers) worker.join();
}

double cut_l2_distance(const NegativityReport& a, const NegativityReport& b, double spacing) {
  double acc = 0.0;
  for (size_t k = 0; k < a.cut.size(); ++k) {
    const double d = a.cut[k].second - b.cut[k].second;
    acc += d * d;
  }
  return std::sqrt(acc * spacing);
}

}  // namespace

ProtocolConfig figure2_base_config() {
  ProtocolConfig config;
  config.total_gain = 0.05;
  config.periods = 1;
  config.kicks_per_period = 24;
  config.kick_spacing_angle = std::numbers::pi / 180.0;
  config.order = 3;
  config.initial = SqueezedThermalParams{0.05, 1.6};
  config.kernel = ThermalKernelParams{0.03};
  config.grid = make_grid(512, 10.0);
  return config;
}

Figure2Result figure2_experiment(const std::vector<std::pair<int, int>>& splits, int jobs) {
  if (splits.empty()) throw validation_error("figure2_experiment: no splits given");
  for (const auto& [mt, n] : splits) {
    if (mt < 1 || n < 1) throw validation_error("figure2_experiment: splits must be positive");
  }

  Figure2Result result;
  result.base = figure2_base_config();

  const WignerState reference = exact_nonlinear_gaussian(
      make_grid(512, 12.0), result.base.initial, result.base.total_gain, result.base.order);
  result.reference_squeezing = squeezing_report(reference);
  result.reference_negativity = negativity_report(reference);

  result.splits.resize(splits.size());
  std::vector<std::string> failures(splits.size());
  parallel_cells(static_cast<int>(splits.size()), jobs, [&](int c) {
    try {
      ProtocolConfig config = result.base;
      config.periods = splits[c].first;
      config.kicks_per_period = splits[c].second;
      const ProtocolTrace trace = run_protocol(config);
      SplitResult& split = result.splits[c];
      split.periods = config.periods;
      split.kicks_per_period = config.kicks_per_period;
      split.squeezing = squeezing_report(trace.final);
      split.negativity = negativity_report(trace.final);
    } catch (const std::exception& e) {
      failures[c] = e.what();
    }
  });
  for (size_t c = 0; c < splits.size(); ++c) {
    if (!failures[c].empty()) {
      std::ostringstream msg;
      msg << "figure2_experiment: split (" << splits[c].first << ", " << splits[c].second
          << ") failed: " << failures[c] << "; partial results discarded";
      throw numeric_error(msg.str());
    }
  }

  // The reference cut lives on a wider grid; resample it linearly onto the
  // experiment p-axis before taking distances.
  for (auto& split : result.splits) {
    NegativityReport ref_on_axis;
    ref_on_axis.cut.reserve(split.negativity.cut.size());
    size_t hint = 0;
    for (const auto& [p, unused] : split.negativity.cut) {
      while (hint + 1 < result.reference_negativity.cut.size() &&
             result.reference_negativity.cut[hint + 1].first < p) {
        ++hint;
      }
      const auto& lo = result.reference_negativity.cut[hint];
      const auto& hi = result.reference_negativity.cut[std::min(
          hint + 1, result.reference_negativity.cut.size() - 1)];
      const double t = (hi.first > lo.first) ? (p - lo.first) / (hi.first - lo.first) : 0.0;
      ref_on_axis.cut.emplace_back(p, lo.second + t * (hi.second - lo.second));
    }
    split.cut_l2_to_reference =
        cut_l2_distance(split.negativity, ref_on_axis, result.base.grid.spacing);
  }

  result.best_split_index = 0;
  result.closest_cut_index = 0;
  for (size_t c = 1; c < result.splits.size(); ++c) {
    if (result.splits[c].squeezing.sigma3_min <
        result.splits[result.best_split_index].squeezing.sigma3_min) {
      result.best_split_index = static_cast<int>(c);
    }
    if (result.splits[c].cut_l2_to_reference <
        result.splits[result.closest_cut_index].cut_l2_to_reference) {
      result.closest_cut_index = static_cast<int>(c);
    }
  }
  return result;
}

FigureS1Result figureS1_experiment(const std::vector<double>& s_values,
                                   const std::vector<double>& n0_values,
                                   std::pair<int, int> split, int jobs) {
  if (s_values.empty() || n0_values.empty()) {
    throw validation_error("figureS1_experiment: empty axis");
  }
  for (double s : s_values) {
    if (!(s >= 0.5 && s <= 3.0)) {
      throw validation_error("figureS1_experiment: s must lie in [0.5, 3]");
    }
  }
  for (double n0 : n0_values) {
    if (!(n0 >= 0.0 && n0 <= 1.0)) {
      throw validation_error("figureS1_experiment: n0 must lie in [0, 1]");
    }
  }
  if (split.first < 1 || split.second < 1) {
    throw validation_error("figureS1_experiment: split must be positive");
  }

  FigureS1Result result;
  result.s_values = s_values;
  result.n0_values = n0_values;
  result.split = split;
  result.grid = make_grid(512, 16.0);
  result.sigma3_min.assign(s_values.size() * n0_values.size(),
                           std::numeric_limits<double>::quiet_NaN());

  const int count = static_cast<int>(result.sigma3_min.size());
  parallel_cells(count, jobs, [&](int c) {
    const size_t si = static_cast<size_t>(c) / n0_values.size();
    const size_t ni = static_cast<size_t>(c) % n0_values.size();
    try {
      ProtocolConfig config = figure2_base_config();
      config.grid = result.grid;
      config.periods = split.first;
      config.kicks_per_period = split.second;
      config.initial = SqueezedThermalParams{n0_values[ni], s_values[si]};
      const ProtocolTrace trace = run_protocol(config);
      result.sigma3_min[static_cast<size_t>(c)] = optimal_lambda(trace.final).sigma3_min;
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "figureS1_experiment: cell (s=" << s_values[si] << ", n0=" << n0_values[ni]
          << ") failed and is recorded as missing: " << e.what();
      emit_warning(msg.str());
    }
  });
  return result;
}

const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> names = {
      "total_gain", "periods",         "kicks_per_period", "kick_spacing_angle",
      "order",      "n0",              "s",                "kernel_variance",
      "n_points",   "half_extent"};
  return names;
}

namespace {

void apply_parameter(ProtocolConfig& config, const std::string& name, double value) {
  auto as_int = [&](const char* what) {
    const int v = static_cast<int>(std::llround(value));
    if (std::abs(value - v) > 1e-9) {
      throw validation_error(std::string("run_sweep: ") + what + " must be an integer");
    }
    return v;
  };
  if (name == "total_gain") config.total_gain = value;
  else if (name == "periods") config.periods = as_int("periods");
  else if (name == "kicks_per_period") config.kicks_per_period = as_int("kicks_per_period");
  else if (name == "kick_spacing_angle") config.kick_spacing_angle = value;
  else if (name == "order") config.order = as_int("order");
  else if (name == "n0") config.initial.n0 = value;
  else if (name == "s") config.initial.s = value;
  else if (name == "kernel_variance") config.kernel.kernel_variance = value;
  else if (name == "n_points") config.grid = grid_spec(as_int("n_points"), config.grid.half_extent);
  else if (name == "half_extent") config.grid = grid_spec(config.grid.n_points, value);
  else throw validation_error("run_sweep: unknown parameter '" + name + "'");
}

double extract_observable(const WignerState& state, const std::string& observable) {
  if (observable == "sigma3_min") return optimal_lambda(state).sigma3_min;
  if (observable == "lambda_star") return optimal_lambda(state).lambda_star;
  if (observable == "min_wigner") return negativity_report(state).min_value;
  if (observable == "negativity_volume") return negativity_report(state).negativity_volume;
  throw validation_error("run_sweep: unknown observable '" + observable + "'");
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec, int parallelism) {
  if (parallelism < 1) throw validation_error("run_sweep: parallelism must be >= 1");
  const auto& names = sweepable_parameters();
  auto known = [&](const std::string& name) {
    return std::find(names.begin(), names.end(), name) != names.end();
  };
  if (spec.axis1.values.empty() || !known(spec.axis1.parameter)) {
    throw validation_error("run_sweep: axis1 needs a known parameter and nonempty values");
  }
  if (spec.axis2 && (spec.axis2->values.empty() || !known(spec.axis2->parameter))) {
    throw validation_error("run_sweep: axis2 needs a known parameter and nonempty values");
  }
  if (spec.observable != "sigma3_min" && spec.observable != "lambda_star" &&
      spec.observable != "min_wigner" && spec.observable != "negativity_volume") {
    throw validation_error("run_sweep: unknown observable '" + spec.observable + "'");
  }
  for (double v : spec.axis1.values) {
    if (!std::isfinite(v)) throw validation_error("run_sweep: axis values must be finite");
  }
  if (spec.axis2) {
    for (double v : spec.axis2->values) {
      if (!std::isfinite(v)) throw validation_error("run_sweep: axis values must be finite");
    }
  }
  spec.base.validate();

  const size_t n2 = spec.axis2 ? spec.axis2->values.size() : 1;
  const size_t count = spec.axis1.values.size() * n2;

  SweepTable table;
  table.columns.push_back(spec.axis1.parameter);
  if (spec.axis2) table.columns.push_back(spec.axis2->parameter);
  table.columns.push_back(spec.observable);
  table.rows.resize(count);

  parallel_cells(static_cast<int>(count), parallelism, [&](int c) {
    const size_t i1 = static_cast<size_t>(c) / n2;
    const size_t i2 = static_cast<size_t>(c) % n2;
    std::vector<double>& row = table.rows[static_cast<size_t>(c)];
    row.push_back(spec.axis1.values[i1]);
    if (spec.axis2) row.push_back(spec.axis2->values[i2]);
    try {
      ProtocolConfig config = spec.base;
      apply_parameter(config, spec.axis1.parameter, spec.axis1.values[i1]);
      if (spec.axis2) apply_parameter(config, spec.axis2->parameter, spec.axis2->values[i2]);
      const ProtocolTrace trace = run_protocol(config);
      row.push_back(extract_observable(trace.final, spec.observable));
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "run_sweep: cell " << c << " failed and is recorded as missing: " << e.what();
      emit_warning(msg.str());
      row.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  });
  return table;
}

}  // namespace strobosim
