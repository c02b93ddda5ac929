#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strobosim/analysis.hpp"
#include "strobosim/protocol.hpp"

namespace strobosim {

// Shared base configuration of the shipped squeezing-curve experiment:
// total gain 0.05, s = 1.6, n0 = 0.05, kernel variance 0.03, 1 degree kick
// spacing, 512 x 10 grid.
ProtocolConfig figure2_base_config();

struct SplitResult {
  int periods = 0;
  int kicks_per_period = 0;
  SqueezingReport squeezing;
  NegativityReport negativity;
  double cut_l2_to_reference = 0.0;
};

struct Figure2Result {
  std::vector<SplitResult> splits;
  SqueezingReport reference_squeezing;   // undamped, unrotated nonlinear state
  NegativityReport reference_negativity;
  int best_split_index = 0;              // argmin sigma3_min
  int closest_cut_index = 0;             // argmin cut_l2_to_reference
  ProtocolConfig base;
};

// Runs the protocol for every (periods, kicks_per_period) split, all sharing
// the same total gain, and attaches the exact nonlinear reference.
Figure2Result figure2_experiment(
    const std::vector<std::pair<int, int>>& splits = {{1, 24}, {2, 12}, {4, 6}, {8, 3}, {24, 1}},
    int jobs = 1);

struct FigureS1Result {
  std::vector<double> s_values;
  std::vector<double> n0_values;
  std::vector<double> sigma3_min;  // row-major, s major; NaN marks failed cells
  std::pair<int, int> split;
  GridSpec grid;
};

// Scans the initial squeezing and occupation at fixed total gain 0.05 on a
// 512 x 16 grid (wide enough for every state in the documented ranges).
// split defaults to the best split of the shipped squeezing experiment.
// Per-cell failures are recorded as NaN, not aborts.
FigureS1Result figureS1_experiment(const std::vector<double>& s_values,
                                   const std::vector<double>& n0_values,
                                   std::pair<int, int> split = {2, 12}, int jobs = 1);

struct SweepAxis {
  std::string parameter;
  std::vector<double> values;
};

struct SweepSpec {
  ProtocolConfig base;
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  std::string observable;  // sigma3_min | lambda_star | min_wigner | negativity_volume
};

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // axis value(s) then observable
};

// Settable scalar parameters for sweep axes.
const std::vector<std::string>& sweepable_parameters();

// Evaluates the observable over the axis grid with a bounded worker pool.
// Output ordering (axis1 major) and values are independent of parallelism;
// failed cells hold NaN.
SweepTable run_sweep(const SweepSpec& spec, int parallelism = 1);

}  // namespace strobosim
