#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strobosim/state.hpp"

namespace strobosim {

// Full parameter set of the stroboscopic protocol. total_gain is the summed
// nonlinearity over the whole run; every pulse carries total_gain/(periods *
// kicks_per_period). kick_spacing_angle is the free rotation between pulses
// (radians); each period is completed to exactly 2 pi of rotation and closed
// by one application of the thermal kernel.
struct ProtocolConfig {
  double total_gain = 0.0;
  int periods = 1;
  int kicks_per_period = 1;
  double kick_spacing_angle = 0.017453292519943295;  // 1 degree
  int order = 3;
  SqueezedThermalParams initial;
  ThermalKernelParams kernel;
  GridSpec grid;

  void validate() const;
  double pulse_gain() const {
    return total_gain / (static_cast<double>(periods) * kicks_per_period);
  }
};

struct StepRecord {
  std::string kind;   // "kick" | "rotate" | "damp"
  double parameter;   // gain, angle or kernel variance
  double norm_defect; // |mass - 1| after the step
};

struct ProtocolTrace {
  std::vector<WignerState> snapshots;  // per period, when requested
  WignerState final;
  std::vector<StepRecord> step_log;
};

// One mechanical period: kicks_per_period repetitions of
// [kick(pulse gain), rotate(kick_spacing_angle)], the closing rotation
// 2 pi - N * angle, then the thermal kernel. Aborts when a step's norm
// defect exceeds 1e-5.
WignerState single_period(const WignerState& state, const ProtocolConfig& config,
                          std::vector<StepRecord>* log = nullptr);

// Builds the squeezed thermal initial state and applies single_period
// config.periods times.
ProtocolTrace run_protocol(const ProtocolConfig& config, bool snapshot_each_period = false);

// Self-convergence estimate of the splitting error: Linf distance between the
// final states of the run refined r-fold (angle/r, N*r kicks, same window and
// total gain) and the run refined (r/2)-fold. refinement 1 compares the run
// with itself and returns 0.
double trotter_convergence(const ProtocolConfig& config, int refinement);

}  // namespace strobosim
