// Golden-file regression of the shipped experiments: rerun both, compare every
// value against the committed CSVs within 1e-9. Exits nonzero on any drift.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "strobosim/errors.hpp"
#include "strobosim/experiments.hpp"
#include "strobosim/io.hpp"

using namespace strobosim;

namespace {

int g_failures = 0;

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;  // comments may carry provenance
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

void compare_csv(const std::filesystem::path& fresh, const std::filesystem::path& golden) {
  const auto a = parse_csv(read_text_file(fresh));
  const auto b = parse_csv(read_text_file(golden));
  if (a.size() != b.size()) {
    std::printf("[FAIL] %s: row count %zu vs golden %zu\n", golden.filename().c_str(), a.size(),
                b.size());
    ++g_failures;
    return;
  }
  double worst = 0.0;
  for (size_t r = 0; r < a.size(); ++r) {
    if (a[r].size() != b[r].size()) {
      std::printf("[FAIL] %s: row %zu has %zu cells vs golden %zu\n", golden.filename().c_str(), r,
                  a[r].size(), b[r].size());
      ++g_failures;
      return;
    }
    for (size_t c = 0; c < a[r].size(); ++c) {
      char* end_a = nullptr;
      char* end_b = nullptr;
      const double va = std::strtod(a[r][c].c_str(), &end_a);
      const double vb = std::strtod(b[r][c].c_str(), &end_b);
      const bool numeric_a = end_a && *end_a == '\0' && !a[r][c].empty();
      const bool numeric_b = end_b && *end_b == '\0' && !b[r][c].empty();
      if (numeric_a != numeric_b || (!numeric_a && a[r][c] != b[r][c])) {
        std::printf("[FAIL] %s: row %zu cell %zu: '%s' vs golden '%s'\n",
                    golden.filename().c_str(), r, c, a[r][c].c_str(), b[r][c].c_str());
        ++g_failures;
        return;
      }
      if (numeric_a) worst = std::max(worst, std::abs(va - vb));
    }
  }
  if (worst > 1e-9) {
    std::printf("[FAIL] %s: max numeric drift %.3e exceeds 1e-9\n", golden.filename().c_str(),
                worst);
    ++g_failures;
  } else {
    std::printf("[PASS] %s: max numeric drift %.3e\n", golden.filename().c_str(), worst);
  }
}

}  // namespace

int main() {
  set_warning_handler([](const std::string&) {});
  const std::filesystem::path golden_dir = STROBOSIM_GOLDEN_DIR;
  const std::filesystem::path work =
      std::filesystem::temp_directory_path() / "strobosim_golden_rerun";
  std::filesystem::create_directories(work);

  const auto fig2_start = std::chrono::steady_clock::now();
  const Figure2Result fig2 = figure2_experiment({{1, 24}, {2, 12}, {4, 6}, {8, 3}, {24, 1}}, 2);
  const double fig2_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - fig2_start).count();
  write_figure2_csv(fig2, work);
  if (fig2_seconds > 300.0) {  // performance regression guard, not physics
    std::printf("[FAIL] fig2 experiment took %.0f s, budget is 300 s\n", fig2_seconds);
    ++g_failures;
  } else {
    std::printf("[PASS] fig2 experiment runtime %.1f s (budget 300 s)\n", fig2_seconds);
  }

  const FigureS1Result figs1 = figureS1_experiment(
      {1.0, 1.25, 1.5, 1.75, 2.0}, {0.0, 0.125, 0.25, 0.375, 0.5},
      {fig2.splits[fig2.best_split_index].periods,
       fig2.splits[fig2.best_split_index].kicks_per_period},
      2);
  write_figureS1_csv(figs1, work / "figS1.csv");

  for (const char* name : {"fig2_curves.csv", "fig2_cuts.csv", "fig2_summary.csv", "figS1.csv"}) {
    if (!std::filesystem::exists(golden_dir / name)) {
      std::printf("[FAIL] golden file %s is missing (regenerate with the CLI)\n", name);
      ++g_failures;
      continue;
    }
    compare_csv(work / name, golden_dir / name);
  }
  return g_failures;
}
