#pragma once

// Config-file parsing and deterministic result serialization (CSV series,
// JSON envelopes).
//
// Config files are "key = value" lines; '#' starts a comment. An optional
// "preset = <name>" line seeds every other field from that preset. Values are
// SI; angular-frequency keys also accept the suffixes Hz_x2pi, kHz_x2pi,
// MHz_x2pi and GHz_x2pi (e.g. "eit.omega_c = 4 MHz_x2pi").

#include "precursor/scenario.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace precursor {

/// Shortest decimal representation that round-trips exactly.
std::string format_double(double v);

ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Config in the same key = value format parse_config accepts.
std::string dump_config(const ScenarioConfig& cfg);

inline constexpr std::string_view kSeriesCsvHeader = "t_s,i_plus,i_minus,i_minus_avg";

/// Streams the series CSV to `out` (may be null) and returns the FNV-1a 64
/// hash of the exact bytes.
std::uint64_t write_series_csv(const RunResult& r, std::ostream* out);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

void write_phase_scan_csv(std::span<const PhasePoint> points, std::ostream& out);
void write_sweep_csv(const SweepTable& table, std::ostream& out);

nlohmann::json to_json(const ScenarioConfig& cfg);
nlohmann::json to_json(const BoundReport& b);
nlohmann::json to_json(const RunSummary& s);
nlohmann::json to_json(const SweepTable& t);

/// {"status": "ok", "version", "determinism_hash", "config", "summary", ...}
nlohmann::json result_envelope(const RunResult& r);
/// {"status": "error", "error_class", "message"}
nlohmann::json error_envelope(std::string_view error_class, std::string_view message);

}  // namespace precursor
