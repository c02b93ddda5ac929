#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "strobosim/analysis.hpp"
#include "strobosim/errors.hpp"
#include "strobosim/experiments.hpp"
#include "strobosim/io.hpp"
#include "strobosim/protocol.hpp"
#include "strobosim/states.hpp"
#include "strobosim/transforms.hpp"

namespace {

using namespace strobosim;

int default_jobs() {
  if (const char* env = std::getenv("STROBOSIM_JOBS")) {
    try {
      const int jobs = std::stoi(env);
      if (jobs >= 1) return jobs;
    } catch (...) {
    }
    throw validation_error("STROBOSIM_JOBS must be a positive integer");
  }
  return 1;
}

LambdaRange parse_lambda_range(const std::string& text) {
  LambdaRange range;
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw validation_error("--lambda-range expects lo:hi:count");
  }
  try {
    range.lo = std::stod(text.substr(0, c1));
    range.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    range.count = std::stoi(text.substr(c2 + 1));
  } catch (...) {
    throw validation_error("--lambda-range expects numeric lo:hi:count");
  }
  return range;
}

// key=value pairs, comma separated or repeated.
std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, double> params;
  for (const auto& entry : raw) {
    size_t begin = 0;
    while (begin < entry.size()) {
      size_t end = entry.find(',', begin);
      if (end == std::string::npos) end = entry.size();
      const std::string item = entry.substr(begin, end - begin);
      const size_t eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw validation_error("--params expects key=value, got '" + item + "'");
      }
      try {
        params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
      } catch (...) {
        throw validation_error("--params value for '" + item.substr(0, eq) + "' is not numeric");
      }
      begin = end + 1;
    }
  }
  return params;
}

double take(std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = it->second;
  params.erase(it);
  return v;
}

int run_simulate(const std::string& config_path, bool snapshots, const std::string& out_state,
                 const std::string& report_path) {
  const ProtocolConfig config = load_protocol_config(config_path);
  const ProtocolTrace trace = run_protocol(config, snapshots);
  if (!out_state.empty()) {
    save_state(trace.final, out_state);
    if (snapshots) {
      const std::filesystem::path base(out_state);
      for (size_t k = 0; k < trace.snapshots.size(); ++k) {
        std::filesystem::path p(base);
        p.replace_filename(base.stem().string() + ".period" + std::to_string(k + 1) +
                           base.extension().string());
        save_state(trace.snapshots[k], p);
      }
    }
  }
  if (!report_path.empty()) {
    write_report_csv(squeezing_report(trace.final), negativity_report(trace.final), report_path);
  }
  return 0;
}

int run_analyze(const std::string& state_path, const std::optional<std::string>& lambda_range,
                const std::string& report_path) {
  const AnyState loaded = load_state(state_path);
  const WignerState state = std::holds_alternative<WignerState>(loaded)
                                ? std::get<WignerState>(loaded)
                                : density_to_wigner(std::get<PositionDensityMatrix>(loaded));
  const LambdaRange range = lambda_range ? parse_lambda_range(*lambda_range) : LambdaRange{};
  write_report_csv(squeezing_report(state, range), negativity_report(state), report_path);
  return 0;
}

int run_reference(const std::string& kind, const std::vector<std::string>& raw_params,
                  const std::string& out_state) {
  auto params = parse_params(raw_params);
  const int n_points = static_cast<int>(take(params, "n_points", 512));
  const double half_extent = take(params, "half_extent", 10.0);
  const GridSpec grid = make_grid(n_points, half_extent);

  WignerState state;
  if (kind == "airy") {
    state = ideal_cubic_wigner(grid, take(params, "gamma", 0.05));
  } else if (kind == "exact-cubic") {
    const SqueezedThermalParams initial{take(params, "n0", 0.0), take(params, "s", 1.0)};
    state = exact_nonlinear_gaussian(grid, initial, take(params, "gamma", 0.05),
                                     static_cast<int>(take(params, "order", 3)));
  } else if (kind == "squeezed-thermal") {
    state = squeezed_thermal(grid, {take(params, "n0", 0.0), take(params, "s", 1.0)});
  } else {
    throw validation_error("reference: unknown kind '" + kind + "'");
  }
  if (!params.empty()) {
    throw validation_error("reference: unused parameter '" + params.begin()->first + "'");
  }
  save_state(state, out_state);
  return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_csv, int jobs,
                  const std::string& heatmap) {
  const SweepSpec spec = load_sweep_spec(config_path);
  const SweepTable table = run_sweep(spec, jobs);
  write_sweep_csv(table, out_csv);
  if (!heatmap.empty()) {
    if (!spec.axis2) {
      throw validation_error("sweep: --heatmap needs a two-axis sweep");
    }
    const int height = static_cast<int>(spec.axis1.values.size());
    const int width = static_cast<int>(spec.axis2->values.size());
    std::vector<double> cells(table.rows.size());
    for (size_t r = 0; r < table.rows.size(); ++r) cells[r] = table.rows[r].back();
    write_heatmap_pgm(cells, width, height, heatmap);
  }
  return 0;
}

int run_fig2(const std::string& out_dir, int jobs) {
  const Figure2Result result =
      figure2_experiment({{1, 24}, {2, 12}, {4, 6}, {8, 3}, {24, 1}}, jobs);
  write_figure2_csv(result, out_dir);
  return 0;
}

int run_figS1(const std::string& out_csv, const std::string& heatmap, int jobs, int split_mt,
              int split_n) {
  const std::vector<double> s_values = {1.0, 1.25, 1.5, 1.75, 2.0};
  const std::vector<double> n0_values = {0.0, 0.125, 0.25, 0.375, 0.5};
  const FigureS1Result result =
      figureS1_experiment(s_values, n0_values, {split_mt, split_n}, jobs);
  write_figureS1_csv(result, out_csv);
  if (!heatmap.empty()) {
    write_heatmap_pgm(result.sigma3_min, static_cast<int>(result.n0_values.size()),
                      static_cast<int>(result.s_values.size()), heatmap);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strobosim: stroboscopic nonlinear oscillator phase-space simulator"};
  app.require_subcommand(1);

  std::string config_path, out_state, report_path, out_csv, heatmap, state_path, kind;
  std::vector<std::string> raw_params;
  bool snapshots = false;
  int jobs = 0;
  int split_mt = 2, split_n = 12;

  auto* simulate =
      app.add_subcommand("simulate", "run the stroboscopic protocol from a JSON config");
  simulate->add_option("--config", config_path, "protocol config JSON")->required();
  simulate->add_flag("--snapshots", snapshots, "save one state per period next to --out");
  simulate->add_option("--out", out_state, "write the final state");
  simulate->add_option("--report", report_path, "write squeezing + negativity report CSV");

  auto* sweep = app.add_subcommand("sweep", "evaluate an observable over a parameter grid");
  sweep->add_option("--config", config_path, "sweep spec JSON")->required();
  sweep->add_option("--out", out_csv, "output CSV")->required();
  sweep->add_option("--jobs", jobs, "parallel workers (default: STROBOSIM_JOBS or 1)");
  sweep->add_option("--heatmap", heatmap, "16-bit PGM of a two-axis sweep");

  auto* analyze = app.add_subcommand("analyze", "report on a saved state file");
  analyze->add_option("--state", state_path, "state file")->required();
  std::string lambda_range_raw;
  auto* lr = analyze->add_option("--lambda-range", lambda_range_raw, "lo:hi:count");
  analyze->add_option("--report", report_path, "output CSV")->required();

  auto* reference = app.add_subcommand("reference", "construct a reference state");
  reference->add_option("--kind", kind, "airy | exact-cubic | squeezed-thermal")->required();
  reference->add_option("--params", raw_params, "key=value[,key=value...]");
  reference->add_option("--out", out_state, "output state file")->required();

  auto* fig2 = app.add_subcommand("fig2", "shipped squeezing-curve experiment (golden-comparable)");
  std::string out_dir = ".";
  fig2->add_option("--out-dir", out_dir, "output directory (default .)");
  fig2->add_option("--jobs", jobs, "parallel workers");

  auto* figs1 = app.add_subcommand("figS1", "shipped (s, n0) scan (golden-comparable)");
  std::string figs1_out = "figS1.csv";
  figs1->add_option("--out", figs1_out, "output CSV (default figS1.csv)");
  figs1->add_option("--heatmap", heatmap, "16-bit PGM heatmap");
  figs1->add_option("--jobs", jobs, "parallel workers");
  figs1->add_option("--split-periods", split_mt, "periods of the protocol split (default 2)");
  figs1->add_option("--split-kicks", split_n, "kicks per period of the split (default 12)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  try {
    if (jobs == 0) jobs = default_jobs();
    if (*simulate) return run_simulate(config_path, snapshots, out_state, report_path);
    if (*sweep) return run_sweep_cmd(config_path, out_csv, jobs, heatmap);
    if (*analyze) {
      std::optional<std::string> lambda_range;
      if (lr->count() > 0) lambda_range = lambda_range_raw;
      return run_analyze(state_path, lambda_range, report_path);
    }
    if (*reference) return run_reference(kind, raw_params, out_state);
    if (*fig2) return run_fig2(out_dir, jobs);
    if (*figs1) return run_figS1(figs1_out, heatmap, jobs, split_mt, split_n);
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const numeric_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
