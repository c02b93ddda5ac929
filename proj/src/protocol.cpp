#include "strobosim/protocol.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "strobosim/errors.hpp"
#include "strobosim/states.hpp"
#include "strobosim/transforms.hpp"

namespace strobosim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void record(std::vector<StepRecord>* log, const WignerState& state, const char* kind,
            double parameter) {
  const double defect = std::abs(total_mass(state) - 1.0);
  if (log) log->push_back(StepRecord{kind, parameter, defect});
  if (!(defect <= 1e-5)) {  // negated so NaN mass also aborts
    std::ostringstream msg;
    msg << "protocol: norm defect " << defect << " after step '" << kind
        << "' (parameter " << parameter << ") exceeds 1e-5";
    if (log) {
      msg << "; step log:";
      const size_t shown = std::min<size_t>(log->size(), 8);
      for (size_t i = log->size() - shown; i < log->size(); ++i) {
        msg << " [" << (*log)[i].kind << " " << (*log)[i].parameter << " defect "
            << (*log)[i].norm_defect << "]";
      }
    }
    throw numeric_error(msg.str());
  }
}

}  // namespace

void ProtocolConfig::validate() const {
  if (!std::isfinite(total_gain)) throw validation_error("protocol: total_gain must be finite");
  if (periods < 1) throw validation_error("protocol: periods must be >= 1");
  if (kicks_per_period < 1) throw validation_error("protocol: kicks_per_period must be >= 1");
  if (order < 3) throw validation_error("protocol: order must be >= 3");
  if (!(kick_spacing_angle >= 0.0) || !std::isfinite(kick_spacing_angle)) {
    throw validation_error("protocol: kick_spacing_angle must be >= 0");
  }
  if (kicks_per_period * kick_spacing_angle >= kTwoPi) {
    throw validation_error(
        "protocol: kick window N * kick_spacing_angle must stay below one full period (2 pi)");
  }
  initial.validate();
  kernel.validate();
  if (grid.n_points == 0) throw validation_error("protocol: grid is unset");
}

WignerState single_period(const WignerState& state, const ProtocolConfig& config,
                          std::vector<StepRecord>* log) {
  config.validate();
  if (!(state.grid == config.grid)) {
    throw validation_error("single_period: state grid does not match config grid");
  }
  const double gain = config.pulse_gain();
  WignerState current = state;
  for (int k = 0; k < config.kicks_per_period; ++k) {
    current = nonlinear_kick_wigner(current, gain, config.order);
    record(log, current, "kick", gain);
    current = rotate(current, config.kick_spacing_angle);
    record(log, current, "rotate", config.kick_spacing_angle);
  }
  const double remainder = kTwoPi - config.kicks_per_period * config.kick_spacing_angle;
  current = rotate(current, remainder);
  record(log, current, "rotate", remainder);
  current = damp(current, config.kernel);
  record(log, current, "damp", config.kernel.kernel_variance);
  return current;
}

ProtocolTrace run_protocol(const ProtocolConfig& config, bool snapshot_each_period) {
  config.validate();
  ProtocolTrace trace;
  WignerState current = squeezed_thermal(config.grid, config.initial);
  for (int period = 0; period < config.periods; ++period) {
    current = single_period(current, config, &trace.step_log);
    if (snapshot_each_period) trace.snapshots.push_back(current);
  }
  trace.final = std::move(current);
  return trace;
}

namespace {

ProtocolConfig refined(const ProtocolConfig& config, int factor) {
  ProtocolConfig fine = config;
  fine.kicks_per_period = config.kicks_per_period * factor;
  fine.kick_spacing_angle = config.kick_spacing_angle / factor;
  return fine;
}

double linf_distance(const WignerState& a, const WignerState& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) {
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  }
  return worst;
}

}  // namespace

double trotter_convergence(const ProtocolConfig& config, int refinement) {
  if (refinement < 1) throw validation_error("trotter_convergence: refinement must be >= 1");
  config.validate();
  if (refinement == 1) return 0.0;  // identical run on both sides
  const int coarse_factor = refinement / 2;
  const WignerState fine = run_protocol(refined(config, refinement)).final;
  const WignerState coarse = run_protocol(refined(config, coarse_factor)).final;
  return linf_distance(fine, coarse);
}

}  // namespace strobosim
