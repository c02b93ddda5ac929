#include "strobosim/io.hpp"

#include <charconv>
#include <functional>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "strobosim/errors.hpp"

namespace strobosim {

namespace {

constexpr char kMagic[8] = {'W', 'I', 'G', 'S', 'T', 'A', 'T', '1'};

void append_u32le(std::string& out, uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void append_f64le(std::string& out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xff));
}

double read_f64le(const char* p) {
  uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) {
    bits |= static_cast<uint64_t>(static_cast<unsigned char>(p[b])) << (8 * b);
  }
  double v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

std::string header_json(const GridSpec& grid, const char* kind, const std::string& provenance) {
  nlohmann::json header;
  header["convention"] = "var_vac=1";
  header["grid"]["half_extent"] = grid.half_extent;
  header["grid"]["n_points"] = grid.n_points;
  header["kind"] = kind;
  header["provenance"] = provenance;
  return header.dump();  // keys sorted: canonical bytes
}

void write_state_file(const GridSpec& grid, const char* kind, const std::string& provenance,
                      const std::function<void(std::string&)>& append_payload,
                      const std::filesystem::path& path) {
  std::string blob;
  blob.append(kMagic, sizeof(kMagic));
  const std::string header = header_json(grid, kind, provenance);
  append_u32le(blob, static_cast<uint32_t>(header.size()));
  blob += header;
  append_payload(blob);
  write_text_file_atomic(path, blob);
}

}  // namespace

void save_state(const WignerState& state, const std::filesystem::path& path) {
  write_state_file(
      state.grid, "wigner", state.metadata,
      [&](std::string& blob) {
        blob.reserve(blob.size() + state.values.size() * 8);
        for (double v : state.values) append_f64le(blob, v);
      },
      path);
}

void save_state(const PositionDensityMatrix& rho, const std::filesystem::path& path) {
  write_state_file(
      rho.grid, "density", rho.metadata,
      [&](std::string& blob) {
        blob.reserve(blob.size() + rho.values.size() * 16);
        for (const auto& v : rho.values) {
          append_f64le(blob, v.real());
          append_f64le(blob, v.imag());
        }
      },
      path);
}

void save_state(const AnyState& state, const std::filesystem::path& path) {
  std::visit([&](const auto& s) { save_state(s, path); }, state);
}

AnyState load_state(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("load_state: cannot open '" + path.string() + "'");
  std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (blob.size() < sizeof(kMagic) + 4 || std::memcmp(blob.data(), kMagic, sizeof(kMagic)) != 0) {
    throw validation_error("load_state: bad magic; '" + path.string() +
                           "' is not a strobosim state file");
  }
  const unsigned char* lp = reinterpret_cast<const unsigned char*>(blob.data() + 8);
  const uint64_t header_len = static_cast<uint64_t>(lp[0]) | (static_cast<uint64_t>(lp[1]) << 8) |
                              (static_cast<uint64_t>(lp[2]) << 16) |
                              (static_cast<uint64_t>(lp[3]) << 24);
  if (12 + header_len > blob.size()) {
    throw validation_error("load_state: header length field exceeds file size (foreign or corrupt file)");
  }

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(blob.substr(12, header_len));
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("load_state: header is not valid JSON: ") + e.what());
  }

  GridSpec grid;
  std::string kind;
  std::string provenance;
  try {
    grid = grid_spec(header.at("grid").at("n_points").get<int>(),
                     header.at("grid").at("half_extent").get<double>());
    kind = header.at("kind").get<std::string>();
    provenance = header.value("provenance", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("load_state: malformed header: ") + e.what());
  }
  const std::string convention = header.value("convention", std::string());
  if (convention != "var_vac=1") {
    throw validation_error("load_state: unsupported convention '" + convention + "'");
  }

  const size_t n = static_cast<size_t>(grid.n_points);
  const size_t payload_offset = 12 + header_len;
  const size_t payload = blob.size() - payload_offset;
  const char* data = blob.data() + payload_offset;

  if (kind == "wigner") {
    const size_t expected = n * n * 8;
    if (payload != expected) {
      std::ostringstream msg;
      msg << "load_state: truncated or oversized wigner payload (expected " << expected
          << " bytes, got " << payload << ")";
      throw validation_error(msg.str());
    }
    WignerState state;
    state.grid = grid;
    state.metadata = provenance;
    state.values.resize(n * n);
    for (size_t i = 0; i < n * n; ++i) state.values[i] = read_f64le(data + 8 * i);
    const double defect = std::abs(total_mass(state) - 1.0);
    if (defect > 1e-5) {
      std::ostringstream msg;
      msg << "load_state: wigner normalization defect " << defect << " in '" << path.string()
          << "' (data may be mid-pipeline)";
      emit_warning(msg.str());
    }
    return state;
  }
  if (kind == "density") {
    const size_t expected = n * n * 16;
    if (payload != expected) {
      std::ostringstream msg;
      msg << "load_state: truncated or oversized density payload (expected " << expected
          << " bytes, got " << payload << ")";
      throw validation_error(msg.str());
    }
    PositionDensityMatrix rho;
    rho.grid = grid;
    rho.metadata = provenance;
    rho.values.resize(n * n);
    for (size_t i = 0; i < n * n; ++i) {
      rho.values[i] = {read_f64le(data + 16 * i), read_f64le(data + 16 * i + 8)};
    }
    const double herm = hermiticity_defect(rho);
    if (herm > 1e-8) {
      std::ostringstream msg;
      msg << "load_state: density hermiticity defect " << herm << " in '" << path.string() << "'";
      emit_warning(msg.str());
    }
    const double trace_defect = std::abs(trace_real(rho) - 1.0);
    if (trace_defect > 1e-5) {
      std::ostringstream msg;
      msg << "load_state: density trace defect " << trace_defect << " in '" << path.string() << "'";
      emit_warning(msg.str());
    }
    return rho;
  }
  throw validation_error("load_state: unknown kind '" + kind + "'");
}

namespace {

GridSpec grid_from_json(const nlohmann::json& j) {
  return grid_spec(j.at("n_points").get<int>(), j.at("half_extent").get<double>());
}

void reject_unknown_keys(const nlohmann::json& j, std::initializer_list<const char*> known,
                         const char* where) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) {
      throw validation_error(std::string("config: unknown key '") + item.key() + "' in " + where);
    }
  }
}

ProtocolConfig protocol_config_from(const nlohmann::json& j) {
  reject_unknown_keys(j,
                      {"total_gain", "periods", "kicks_per_period", "kick_spacing_angle", "order",
                       "initial", "kernel", "grid"},
                      "protocol config");
  ProtocolConfig config;
  config.total_gain = j.at("total_gain").get<double>();
  config.periods = j.at("periods").get<int>();
  config.kicks_per_period = j.at("kicks_per_period").get<int>();
  if (j.contains("kick_spacing_angle")) {
    config.kick_spacing_angle = j.at("kick_spacing_angle").get<double>();
  }
  if (j.contains("order")) config.order = j.at("order").get<int>();
  if (j.contains("initial")) {
    reject_unknown_keys(j.at("initial"), {"n0", "s"}, "initial");
    config.initial.n0 = j.at("initial").value("n0", 0.0);
    config.initial.s = j.at("initial").value("s", 1.0);
  }
  if (j.contains("kernel")) {
    reject_unknown_keys(j.at("kernel"), {"kernel_variance", "n_th", "eta_over_omega"}, "kernel");
    if (j.at("kernel").contains("kernel_variance")) {
      config.kernel.kernel_variance = j.at("kernel").at("kernel_variance").get<double>();
    } else {
      config.kernel = ThermalKernelParams::from_bath(j.at("kernel").at("n_th").get<double>(),
                                                     j.at("kernel").at("eta_over_omega").get<double>());
    }
  }
  if (j.contains("grid")) {
    config.grid = grid_from_json(j.at("grid"));
  } else {
    config.grid = make_grid(512, 10.0);
  }
  config.validate();
  return config;
}

}  // namespace

ProtocolConfig protocol_config_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("config: invalid JSON: ") + e.what());
  }
  try {
    return protocol_config_from(j);
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("config: ") + e.what());
  }
}

ProtocolConfig load_protocol_config(const std::filesystem::path& path) {
  return protocol_config_from_json(read_text_file(path));
}

SweepSpec sweep_spec_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("sweep config: invalid JSON: ") + e.what());
  }
  try {
    reject_unknown_keys(j, {"base", "axis1", "axis2", "observable"}, "sweep spec");
    SweepSpec spec;
    spec.base = protocol_config_from(j.at("base"));
    auto parse_axis = [](const nlohmann::json& a) {
      reject_unknown_keys(a, {"parameter", "values"}, "sweep axis");
      SweepAxis axis;
      axis.parameter = a.at("parameter").get<std::string>();
      axis.values = a.at("values").get<std::vector<double>>();
      return axis;
    };
    spec.axis1 = parse_axis(j.at("axis1"));
    if (j.contains("axis2")) spec.axis2 = parse_axis(j.at("axis2"));
    spec.observable = j.at("observable").get<std::string>();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("sweep config: ") + e.what());
  }
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  return sweep_spec_from_json(read_text_file(path));
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_double_12(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open '" + path.string() + "'");
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_text_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw validation_error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw validation_error("short write to '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

void write_sweep_csv(const SweepTable& table, const std::filesystem::path& path) {
  std::string out = "# strobosim sweep v1\n";
  for (size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  write_text_file_atomic(path, out);
}

void write_report_csv(const SqueezingReport& squeezing, const NegativityReport& negativity,
                      const std::filesystem::path& path) {
  std::string out = "# strobosim report v1\n";
  out += "# lambda_star=" + format_double_12(squeezing.lambda_star) +
         " sigma3_min=" + format_double_12(squeezing.sigma3_min) +
         " vacuum_threshold=" + format_double_12(squeezing.vacuum_threshold_at_star) +
         " beats_vacuum=" + (squeezing.beats_vacuum ? std::string("1") : std::string("0")) +
         " beats_shot_noise=" + (squeezing.beats_shot_noise ? std::string("1") : std::string("0")) +
         " min_wigner=" + format_double_12(negativity.min_value) +
         " negativity_volume=" + format_double_12(negativity.negativity_volume) + "\n";
  out += "section,a,b\n";
  for (const auto& [lambda, value] : squeezing.lambda_samples) {
    out += "sigma3," + format_double_12(lambda) + ',' + format_double_12(value) + '\n';
  }
  for (const auto& [p, w] : negativity.cut) {
    out += "cut," + format_double_12(p) + ',' + format_double_12(w) + '\n';
  }
  write_text_file_atomic(path, out);
}

namespace {

std::string split_name(int periods, int kicks) {
  return "MT" + std::to_string(periods) + "xN" + std::to_string(kicks);
}

}  // namespace

void write_figure2_csv(const Figure2Result& result, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);

  std::string curves = "# strobosim fig2 squeezing curves v1\nseries,lambda,sigma3\n";
  std::string cuts = "# strobosim fig2 wigner cuts v1\nseries,p,w\n";
  std::string summary =
      "# strobosim fig2 summary v1\n"
      "series,periods,kicks_per_period,lambda_star,sigma3_min,vacuum_threshold,beats_vacuum,"
      "beats_shot_noise,min_wigner,negativity_volume,cut_l2_to_reference\n";

  auto emit_series = [&](const std::string& name, const SqueezingReport& sq,
                         const NegativityReport& neg) {
    for (const auto& [lambda, value] : sq.lambda_samples) {
      curves += name + ',' + format_double_12(lambda) + ',' + format_double_12(value) + '\n';
    }
    for (const auto& [p, w] : neg.cut) {
      cuts += name + ',' + format_double_12(p) + ',' + format_double_12(w) + '\n';
    }
  };

  emit_series("reference", result.reference_squeezing, result.reference_negativity);
  summary += "reference,0,0," + format_double_12(result.reference_squeezing.lambda_star) + ',' +
             format_double_12(result.reference_squeezing.sigma3_min) + ',' +
             format_double_12(result.reference_squeezing.vacuum_threshold_at_star) + ',' +
             (result.reference_squeezing.beats_vacuum ? "1" : "0") + ',' +
             (result.reference_squeezing.beats_shot_noise ? "1" : "0") + ',' +
             format_double_12(result.reference_negativity.min_value) + ',' +
             format_double_12(result.reference_negativity.negativity_volume) + ",0\n";

  for (const auto& split : result.splits) {
    const std::string name = split_name(split.periods, split.kicks_per_period);
    emit_series(name, split.squeezing, split.negativity);
    summary += name + ',' + std::to_string(split.periods) + ',' +
               std::to_string(split.kicks_per_period) + ',' +
               format_double_12(split.squeezing.lambda_star) + ',' +
               format_double_12(split.squeezing.sigma3_min) + ',' +
               format_double_12(split.squeezing.vacuum_threshold_at_star) + ',' +
               (split.squeezing.beats_vacuum ? "1" : "0") + ',' +
               (split.squeezing.beats_shot_noise ? "1" : "0") + ',' +
               format_double_12(split.negativity.min_value) + ',' +
               format_double_12(split.negativity.negativity_volume) + ',' +
               format_double_12(split.cut_l2_to_reference) + '\n';
  }
  const auto& best = result.splits[result.best_split_index];
  const auto& closest = result.splits[result.closest_cut_index];
  summary += "# best_split=" + split_name(best.periods, best.kicks_per_period) +
             " closest_cut_split=" + split_name(closest.periods, closest.kicks_per_period) + "\n";

  write_text_file_atomic(directory / "fig2_curves.csv", curves);
  write_text_file_atomic(directory / "fig2_cuts.csv", cuts);
  write_text_file_atomic(directory / "fig2_summary.csv", summary);
}

void write_figureS1_csv(const FigureS1Result& result, const std::filesystem::path& path) {
  std::string out = "# strobosim figS1 v1\n";
  out += "# split=MT" + std::to_string(result.split.first) + "xN" +
         std::to_string(result.split.second) + " grid_n=" + std::to_string(result.grid.n_points) +
         " grid_half_extent=" + format_double_12(result.grid.half_extent) + "\n";
  out += "s,n0,sigma3_min\n";
  for (size_t si = 0; si < result.s_values.size(); ++si) {
    for (size_t ni = 0; ni < result.n0_values.size(); ++ni) {
      out += format_double_12(result.s_values[si]) + ',' + format_double_12(result.n0_values[ni]) +
             ',' + format_double_12(result.sigma3_min[si * result.n0_values.size() + ni]) + '\n';
    }
  }
  write_text_file_atomic(path, out);
}

void write_heatmap_pgm(const std::vector<double>& values, int width, int height,
                       const std::filesystem::path& path) {
  if (width <= 0 || height <= 0 || values.size() != static_cast<size_t>(width) * height) {
    throw validation_error("write_heatmap_pgm: dimensions do not match value count");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (std::isnan(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!std::isfinite(lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  const double span = (hi > lo) ? (hi - lo) : 1.0;

  std::string out = "P5\n# linear map: min=" + format_double_12(lo) +
                    " max=" + format_double_12(hi) + " (NaN -> 0)\n" + std::to_string(width) +
                    " " + std::to_string(height) + "\n65535\n";
  for (double v : values) {
    uint16_t g = 0;
    if (!std::isnan(v)) {
      g = static_cast<uint16_t>(std::llround((v - lo) / span * 65535.0));
    }
    out.push_back(static_cast<char>(g >> 8));  // big-endian per the format
    out.push_back(static_cast<char>(g & 0xff));
  }
  write_text_file_atomic(path, out);
}

}  // namespace strobosim
