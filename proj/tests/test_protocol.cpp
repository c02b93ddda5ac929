#include <doctest.h>

#include <cmath>
#include <numbers>

#include "strobosim/analysis.hpp"
#include "strobosim/errors.hpp"
#include "strobosim/protocol.hpp"
#include "strobosim/states.hpp"
#include "strobosim/transforms.hpp"
#include "test_util.hpp"

using namespace strobosim;
using test_util::linf;

namespace {

ProtocolConfig small_config() {
  ProtocolConfig config;
  config.total_gain = 0.05;
  config.periods = 2;
  config.kicks_per_period = 6;
  config.initial = SqueezedThermalParams{0.05, 1.6};
  config.kernel = ThermalKernelParams{0.03};
  config.grid = make_grid(256, 10.0);
  return config;
}

}  // namespace

TEST_CASE("config validation") {
  ProtocolConfig config = small_config();
  CHECK_NOTHROW(config.validate());

  config.kicks_per_period = 720;  // 720 degrees of kick window
  CHECK_THROWS_AS(config.validate(), validation_error);

  config = small_config();
  config.periods = 0;
  CHECK_THROWS_AS(config.validate(), validation_error);

  config = small_config();
  config.order = 2;
  CHECK_THROWS_AS(config.validate(), validation_error);

  config = small_config();
  config.kick_spacing_angle = -0.1;
  CHECK_THROWS_AS(config.validate(), validation_error);
}

TEST_CASE("pulse gain bookkeeping has no division drift") {
  ProtocolConfig config = small_config();
  config.periods = 7;
  config.kicks_per_period = 13;
  config.total_gain = 0.05;
  double acc = 0.0;
  for (int k = 0; k < config.periods * config.kicks_per_period; ++k) acc += config.pulse_gain();
  CHECK(std::abs(acc - config.total_gain) < 1e-12);
}

TEST_CASE("zero gain period reduces to damping alone") {
  ProtocolConfig config = small_config();
  config.total_gain = 0.0;
  const WignerState input = squeezed_thermal(config.grid, config.initial);
  const WignerState period = single_period(input, config);
  const WignerState damped = damp(input, config.kernel);
  CHECK(linf(period, damped) < 1e-6);
}

TEST_CASE("degenerate schedule reproduces the exact nonlinear state") {
  // no rotation, no damping: N kicks compose into one kick of the period gain
  ProtocolConfig config;
  config.total_gain = 0.05;
  config.periods = 1;
  config.kicks_per_period = 6;
  config.kick_spacing_angle = 0.0;
  config.kernel = ThermalKernelParams{0.0};
  config.initial = SqueezedThermalParams{0.0, 1.0};
  config.grid = make_grid(512, 10.0);
  const ProtocolTrace trace = run_protocol(config);
  const WignerState exact = exact_nonlinear_gaussian(config.grid, config.initial, 0.05);
  CHECK(linf(trace.final, exact) < 1e-8);
}

TEST_CASE("full identity configuration returns the initial state") {
  ProtocolConfig config;
  config.total_gain = 0.0;
  config.periods = 1;
  config.kicks_per_period = 1;
  config.kernel = ThermalKernelParams{0.0};
  config.initial = SqueezedThermalParams{0.05, 1.6};
  config.grid = make_grid(256, 10.0);
  const ProtocolTrace trace = run_protocol(config);
  CHECK(linf(trace.final, squeezed_thermal(config.grid, config.initial)) < 1e-7);
}

TEST_CASE("periods compose") {
  ProtocolConfig config = small_config();
  config.periods = 3;
  const WignerState full = run_protocol(config).final;

  // same per-pulse gain: one third of the total over one period
  ProtocolConfig head = config;
  head.periods = 1;
  head.total_gain = config.total_gain / 3.0;
  REQUIRE(head.pulse_gain() == config.pulse_gain());
  WignerState resumed = run_protocol(head).final;
  resumed = single_period(resumed, config);
  resumed = single_period(resumed, config);
  CHECK(linf(full, resumed) < 1e-9);
}

TEST_CASE("snapshots and step log") {
  ProtocolConfig config = small_config();
  const ProtocolTrace trace = run_protocol(config, true);
  CHECK(trace.snapshots.size() == 2);
  CHECK(linf(trace.snapshots.back(), trace.final) == 0.0);
  // per period: N kicks + N rotations + closing rotation + damp
  CHECK(trace.step_log.size() == static_cast<size_t>(2 * (2 * 6 + 2)));
  for (const auto& step : trace.step_log) CHECK(step.norm_defect < 1e-6);
}

TEST_CASE("nondemolition chain: x marginal survives kicks without rotation") {
  ProtocolConfig config;
  config.total_gain = 0.06;
  config.periods = 3;
  config.kicks_per_period = 4;
  config.kick_spacing_angle = 0.0;
  config.kernel = ThermalKernelParams{0.0};
  config.initial = SqueezedThermalParams{0.05, 1.6};
  config.grid = make_grid(256, 10.0);
  const ProtocolTrace trace = run_protocol(config);
  const WignerState initial = squeezed_thermal(config.grid, config.initial);
  CHECK(test_util::linf(x_marginal(trace.final), x_marginal(initial)) < 1e-7);
}

TEST_CASE("more thermal noise cannot deepen the wigner minimum") {
  double previous = -1e9;
  for (double variance : {0.0, 0.03, 0.1}) {
    ProtocolConfig config = small_config();
    config.kernel = ThermalKernelParams{variance};
    const WignerState final = run_protocol(config).final;
    double min_value = final.values[0];
    for (double v : final.values) min_value = std::min(min_value, v);
    CHECK(min_value >= previous - 1e-9);
    previous = min_value;
  }
}

TEST_CASE("trotter convergence endpoints") {
  ProtocolConfig config = small_config();
  CHECK(trotter_convergence(config, 1) == 0.0);

  config.total_gain = 0.0;
  CHECK(trotter_convergence(config, 2) < 1e-9);
  CHECK(trotter_convergence(config, 4) < 1e-9);

  CHECK_THROWS_AS(trotter_convergence(config, 0), validation_error);
}

TEST_CASE("trotter distances shrink with refinement") {
  ProtocolConfig config = small_config();
  config.periods = 1;
  config.kicks_per_period = 6;
  const double d2 = trotter_convergence(config, 2);
  const double d4 = trotter_convergence(config, 4);
  CHECK(d2 > 0.0);
  CHECK(d4 < d2);
}

TEST_CASE("protocol runs are deterministic") {
  ProtocolConfig config = small_config();
  const WignerState a = run_protocol(config).final;
  const WignerState b = run_protocol(config).final;
  CHECK(test_util::bitwise_equal(a.values, b.values));
}
