#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "strobosim/errors.hpp"
#include "strobosim/io.hpp"
#include "strobosim/states.hpp"
#include "strobosim/transforms.hpp"
#include "test_util.hpp"

using namespace strobosim;

namespace {

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "strobosim_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) { return read_text_file(p); }

}  // namespace

TEST_CASE("wigner state files round trip byte for byte") {
  const auto dir = temp_dir();
  const WignerState state = squeezed_thermal(make_grid(128, 8.0), {0.1, 1.2});

  const auto path1 = dir / "a.state";
  const auto path2 = dir / "b.state";
  save_state(state, path1);
  const AnyState loaded = load_state(path1);
  REQUIRE(std::holds_alternative<WignerState>(loaded));
  const WignerState& back = std::get<WignerState>(loaded);
  CHECK(test_util::bitwise_equal(back.values, state.values));
  CHECK(back.grid == state.grid);
  CHECK(back.metadata == state.metadata);

  save_state(back, path2);
  CHECK(slurp(path1) == slurp(path2));
}

TEST_CASE("density state files round trip byte for byte") {
  const auto dir = temp_dir();
  const PositionDensityMatrix rho =
      wigner_to_density(squeezed_thermal(make_grid(128, 8.0), {0.0, 1.0}));
  const auto path1 = dir / "rho.state";
  const auto path2 = dir / "rho2.state";
  save_state(rho, path1);
  const AnyState loaded = load_state(path1);
  REQUIRE(std::holds_alternative<PositionDensityMatrix>(loaded));
  save_state(loaded, path2);
  CHECK(slurp(path1) == slurp(path2));
}

TEST_CASE("state file errors are specific") {
  const auto dir = temp_dir();
  const WignerState state = squeezed_thermal(make_grid(128, 8.0), {0.0, 1.0});
  const auto path = dir / "broken.state";

  SUBCASE("bad magic") {
    save_state(state, path);
    std::string blob = slurp(path);
    blob[0] = 'X';
    write_text_file_atomic(path, blob);
    CHECK_THROWS_WITH_AS(load_state(path), doctest::Contains("bad magic"), validation_error);
  }
  SUBCASE("truncated payload names byte counts") {
    save_state(state, path);
    std::string blob = slurp(path);
    blob.resize(blob.size() - 17);
    write_text_file_atomic(path, blob);
    try {
      load_state(path);
      FAIL("expected a validation error");
    } catch (const validation_error& e) {
      const std::string what = e.what();
      CHECK(what.find("expected 131072 bytes") != std::string::npos);
      CHECK(what.find("got 131055") != std::string::npos);
    }
  }
  SUBCASE("header that is not JSON") {
    save_state(state, path);
    std::string blob = slurp(path);
    blob[14] = '#';
    write_text_file_atomic(path, blob);
    CHECK_THROWS_AS(load_state(path), validation_error);
  }
  SUBCASE("byte-swapped length field is rejected") {
    // a foreign-endian writer would scramble the header length
    save_state(state, path);
    std::string blob = slurp(path);
    std::swap(blob[8], blob[11]);
    std::swap(blob[9], blob[10]);
    write_text_file_atomic(path, blob);
    CHECK_THROWS_AS(load_state(path), validation_error);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(load_state(dir / "nope.state"), validation_error); }
}

TEST_CASE("loading reports invariant defects as warnings, not failures") {
  const auto dir = temp_dir();
  WignerState state = squeezed_thermal(make_grid(128, 8.0), {0.0, 1.0});
  for (double& v : state.values) v *= 1.5;  // break normalization
  const auto path = dir / "denorm.state";
  save_state(state, path);

  test_util::WarningCapture capture;
  const AnyState loaded = load_state(path);
  CHECK(std::holds_alternative<WignerState>(loaded));
  REQUIRE(!capture.messages().empty());
  CHECK(capture.messages()[0].find("normalization defect") != std::string::npos);
}

TEST_CASE("protocol config json: defaults, strictness") {
  const ProtocolConfig config = protocol_config_from_json(R"({
    "total_gain": 0.05,
    "periods": 4,
    "kicks_per_period": 6,
    "initial": {"n0": 0.05, "s": 1.6},
    "kernel": {"kernel_variance": 0.03}
  })");
  CHECK(config.total_gain == 0.05);
  CHECK(config.periods == 4);
  CHECK(config.kick_spacing_angle == doctest::Approx(0.017453292519943295));
  CHECK(config.order == 3);
  CHECK(config.grid.n_points == 512);
  CHECK(config.grid.half_extent == 10.0);

  CHECK_THROWS_AS(protocol_config_from_json("{"), validation_error);
  CHECK_THROWS_AS(protocol_config_from_json(R"({"total_gain": 1})"), validation_error);
  CHECK_THROWS_AS(protocol_config_from_json(R"({
    "total_gain": 0.05, "periods": 1, "kicks_per_period": 6, "gamma": 1.0
  })"),
                  validation_error);  // unknown key
}

TEST_CASE("kernel can be given through bath parameters") {
  const ProtocolConfig config = protocol_config_from_json(R"({
    "total_gain": 0.0,
    "periods": 1,
    "kicks_per_period": 1,
    "kernel": {"n_th": 100000.0, "eta_over_omega": 1e-6}
  })");
  // (2 n_th + 1) * 2 pi * eta/omega
  CHECK(config.kernel.kernel_variance == doctest::Approx(1.2566433448).epsilon(1e-9));
}

TEST_CASE("sweep spec json") {
  const SweepSpec spec = sweep_spec_from_json(R"({
    "base": {"total_gain": 0.05, "periods": 1, "kicks_per_period": 6,
             "grid": {"n_points": 128, "half_extent": 10.0}},
    "axis1": {"parameter": "s", "values": [1.0, 1.5]},
    "axis2": {"parameter": "n0", "values": [0.0, 0.1]},
    "observable": "sigma3_min"
  })");
  CHECK(spec.axis1.parameter == "s");
  REQUIRE(spec.axis2.has_value());
  CHECK(spec.axis2->values.size() == 2);
  CHECK(spec.observable == "sigma3_min");
}

TEST_CASE("sweep csv carries the exact header line") {
  const auto dir = temp_dir();
  SweepTable table;
  table.columns = {"s", "sigma3_min"};
  table.rows = {{1.0, 0.5}, {2.0, 0.25}};
  const auto path = dir / "sweep.csv";
  write_sweep_csv(table, path);
  const std::string text = slurp(path);
  CHECK(text.rfind("# strobosim sweep v1\n", 0) == 0);
  CHECK(text.find("s,sigma3_min\n") != std::string::npos);
  CHECK(text.find("\n1,0.5\n") != std::string::npos);
}

TEST_CASE("doubles render with shortest round trip form") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  const double v = 0.1234567890123456789;
  CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("pgm heatmaps are 16-bit big-endian with a linear map comment") {
  const auto dir = temp_dir();
  const auto path = dir / "map.pgm";
  write_heatmap_pgm({0.0, 0.5, 1.0, std::nan("")}, 2, 2, path);
  const std::string bytes = slurp(path);
  CHECK(bytes.rfind("P5\n", 0) == 0);
  CHECK(bytes.find("# linear map: min=0 max=1") != std::string::npos);
  CHECK(bytes.find("\n2 2\n65535\n") != std::string::npos);
  // payload: 4 samples, 2 bytes each, most significant byte first
  const size_t payload = bytes.size() - 8;
  const std::string body = bytes.substr(bytes.find("65535\n") + 6);
  REQUIRE(body.size() == 8);
  CHECK(static_cast<unsigned char>(body[0]) == 0);    // 0.0 -> 0
  CHECK(static_cast<unsigned char>(body[4]) == 255);  // 1.0 -> 65535
  CHECK(static_cast<unsigned char>(body[5]) == 255);
  CHECK(static_cast<unsigned char>(body[6]) == 0);    // NaN -> 0
  CHECK(static_cast<unsigned char>(body[7]) == 0);
  (void)payload;

  CHECK_THROWS_AS(write_heatmap_pgm({1.0}, 2, 2, path), validation_error);
}
