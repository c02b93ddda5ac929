#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "strobosim/experiments.hpp"
#include "strobosim/protocol.hpp"
#include "strobosim/state.hpp"

namespace strobosim {

using AnyState = std::variant<WignerState, PositionDensityMatrix>;

// Binary state container: 8-byte magic "WIGSTAT1", little-endian u32 header
// length, UTF-8 JSON header {convention, grid{half_extent, n_points}, kind,
// provenance}, then the payload as row-major little-endian doubles (real field
// for "wigner", interleaved re/im for "density"). Canonical: load then save is
// byte-identical. Writes are whole-file atomic (temp file + rename).
void save_state(const WignerState& state, const std::filesystem::path& path);
void save_state(const PositionDensityMatrix& rho, const std::filesystem::path& path);
void save_state(const AnyState& state, const std::filesystem::path& path);

// Validates magic, header and payload size (distinct errors for each); checks
// normalization / hermiticity invariants and reports defects as warnings
// without failing (data may be mid-pipeline).
AnyState load_state(const std::filesystem::path& path);

// JSON mirrors of the config types (field names match the struct members).
ProtocolConfig protocol_config_from_json(const std::string& json_text);
ProtocolConfig load_protocol_config(const std::filesystem::path& path);
SweepSpec sweep_spec_from_json(const std::string& json_text);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

// Shortest round-trip decimal representation.
std::string format_double(double value);
// Fixed 12 significant digits, for golden-comparable experiment outputs.
std::string format_double_12(double value);

// CSV emission. Sweep tables carry the bit-exact header line
// "# strobosim sweep v1"; experiment files carry their own headers. All
// writers are deterministic (no timestamps) and atomic.
void write_sweep_csv(const SweepTable& table, const std::filesystem::path& path);
void write_report_csv(const SqueezingReport& squeezing, const NegativityReport& negativity,
                      const std::filesystem::path& path);
void write_figure2_csv(const Figure2Result& result, const std::filesystem::path& directory);
void write_figureS1_csv(const FigureS1Result& result, const std::filesystem::path& path);

// 16-bit binary PGM (P5, maxval 65535, big-endian samples) with the linear
// value mapping recorded in a header comment. NaN cells map to 0.
void write_heatmap_pgm(const std::vector<double>& values, int width, int height,
                       const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace strobosim
