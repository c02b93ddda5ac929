#include <doctest.h>

#include <cmath>

#include "strobosim/analysis.hpp"
#include "strobosim/errors.hpp"
#include "strobosim/experiments.hpp"
#include "strobosim/protocol.hpp"
#include "test_util.hpp"

using namespace strobosim;

namespace {

SweepSpec small_sweep() {
  SweepSpec spec;
  spec.base.total_gain = 0.05;
  spec.base.periods = 1;
  spec.base.kicks_per_period = 6;
  spec.base.initial = SqueezedThermalParams{0.05, 1.4};
  spec.base.kernel = ThermalKernelParams{0.03};
  spec.base.grid = make_grid(128, 10.0);
  spec.axis1 = SweepAxis{"s", {1.0, 1.4}};
  spec.observable = "sigma3_min";
  return spec;
}

}  // namespace

TEST_CASE("a one-point sweep equals the direct run") {
  SweepSpec spec = small_sweep();
  spec.axis1.values = {1.4};
  const SweepTable table = run_sweep(spec, 1);
  REQUIRE(table.rows.size() == 1);
  REQUIRE(table.rows[0].size() == 2);

  const ProtocolTrace trace = run_protocol(spec.base);
  CHECK(table.rows[0][1] == optimal_lambda(trace.final).sigma3_min);
}

TEST_CASE("sweep output is independent of parallelism") {
  SweepSpec spec = small_sweep();
  spec.axis2 = SweepAxis{"kernel_variance", {0.0, 0.03, 0.06}};
  const SweepTable serial = run_sweep(spec, 1);
  const SweepTable parallel = run_sweep(spec, 8);
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (size_t r = 0; r < serial.rows.size(); ++r) {
    CHECK(test_util::bitwise_equal(serial.rows[r], parallel.rows[r]));
  }
  CHECK(serial.columns == std::vector<std::string>{"s", "kernel_variance", "sigma3_min"});
}

TEST_CASE("sweep validates parameters before running anything") {
  SweepSpec spec = small_sweep();
  spec.axis1.parameter = "squeezing";  // not a config field
  CHECK_THROWS_AS(run_sweep(spec, 1), validation_error);

  spec = small_sweep();
  spec.observable = "fidelity";
  CHECK_THROWS_AS(run_sweep(spec, 1), validation_error);

  spec = small_sweep();
  spec.axis1.values.clear();
  CHECK_THROWS_AS(run_sweep(spec, 1), validation_error);
}

TEST_CASE("sweep records failing cells as NaN and continues") {
  test_util::WarningCapture capture;
  SweepSpec spec = small_sweep();
  // s = 0.01 cannot fit the grid: the cell fails, the sweep survives
  spec.axis1.values = {1.0, 0.01};
  const SweepTable table = run_sweep(spec, 1);
  REQUIRE(table.rows.size() == 2);
  CHECK(std::isfinite(table.rows[0][1]));
  CHECK(std::isnan(table.rows[1][1]));
  CHECK(!capture.messages().empty());
}

TEST_CASE("figureS1 validates its axes") {
  CHECK_THROWS_AS(figureS1_experiment({0.2}, {0.0}), validation_error);
  CHECK_THROWS_AS(figureS1_experiment({1.0}, {2.0}), validation_error);
  CHECK_THROWS_AS(figureS1_experiment({}, {0.0}), validation_error);
}

TEST_CASE("figure2 validates its splits") {
  CHECK_THROWS_AS(figure2_experiment({}), validation_error);
  CHECK_THROWS_AS(figure2_experiment({{0, 24}}), validation_error);
}

TEST_CASE("figureS1 reference cells") {
  // the (2, 0.05) cell is finite
  const FigureS1Result dot = figureS1_experiment({2.0}, {0.05});
  REQUIRE(dot.sigma3_min.size() == 1);
  CHECK(std::isfinite(dot.sigma3_min[0]));

  // decoherence only degrades: the (1, 0) cell cannot beat the undamped,
  // unrotated bound sigma_P = 1
  const FigureS1Result pure = figureS1_experiment({1.0}, {0.0});
  REQUIRE(pure.sigma3_min.size() == 1);
  CHECK(pure.sigma3_min[0] >= 1.0 - 1e-6);
}
