#pragma once

// Scenario configuration, figure presets, single runs and delay sweeps.

#include "precursor/detector.hpp"
#include "precursor/interferometer.hpp"
#include "precursor/media.hpp"
#include "precursor/pulse.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace precursor {

enum class WindowMode {
    FullPulse,   // the whole pulse plus guards (and slow-light tail when |-> is unfiltered)
    EdgeWindow,  // a truncated pulse whose top lasts edge_window_span - tr
};

enum class ScenarioKind { Interferometer, PhaseScan };

enum class ProbeMedium { Eit, TwoLevel, Passive };

struct GridSettings {
    double dt = 1e-11;              // s
    double min_span = 0.0;          // s, record is padded to at least this
    WindowMode window_mode = WindowMode::FullPulse;
    double edge_window_span = 20e-9;  // s
};

/// Interval [start, start + span) over which summary maxima are taken.
struct AnalysisWindow {
    double start = 0.0;
    double span = 5e-9;
};

struct PhaseScanSettings {
    double half_range = constants::kTwoPi * 20e6;  // rad/s
    std::size_t points = 2001;
};

struct OutputSettings {
    std::string stem;  // file stem; defaults to the scenario name
    bool csv = true;
    bool json = true;
};

struct ScenarioConfig {
    std::string name = "custom";
    ScenarioKind kind = ScenarioKind::Interferometer;
    InputPulseSpec pulse{};

    ProbeMedium probe_medium = ProbeMedium::Eit;
    EitThreeLevel eit{};
    TwoLevelFilter filter{};  // applied to |-> iff z2 > 0

    double z1 = 0.01;
    double z2 = 0.0;
    double tau_d = 0.0;
    double omega31 = constants::kCarrierFrequency;
    bool include_carrier_phase = false;
    Propagation propagation = Propagation::Linearized;

    DetectorModel detector{};
    GridSettings grid{};
    AnalysisWindow analysis{};
    PhaseScanSettings scan{};
    OutputSettings outputs{};

    InterferometerConfig interferometer() const;
    /// Pulse actually simulated: EdgeWindow truncates the top.
    InputPulseSpec simulated_pulse() const;
    void validate() const;
};

std::span<const std::string_view> preset_names();
ScenarioConfig preset(std::string_view name);

/// Power-of-two grid for the scenario (see WindowMode).
TimeGrid plan_grid(const ScenarioConfig& cfg);

inline constexpr std::size_t kDefaultSampleCap = std::size_t{1} << 26;
/// PRECURSOR_MAX_SAMPLES, or kDefaultSampleCap.
std::size_t sample_cap_from_env();
/// PRECURSOR_OUTPUT_DIR, or ".".
std::string output_dir_from_env();

struct RunSummary {
    double analysis_start;
    double analysis_end;
    double max_raw_i_minus;         // within the analysis window
    double max_avg_i_minus;         // windows centred in the analysis window
    double max_raw_i_minus_record;  // whole record
    double max_power;               // W, from max_avg_i_minus
    BoundReport bound;
};

struct RunResult {
    ScenarioConfig config;
    TimeGrid grid;
    std::vector<double> i_plus;
    std::vector<double> i_minus;
    std::vector<double> i_minus_avg;  // detector output held on the raw samples
    AveragedSeries averaged;
    RunSummary summary;
    std::string version;
    std::uint64_t determinism_hash;
};

std::string_view library_version();

RunResult run(const ScenarioConfig& cfg, std::size_t max_samples = kDefaultSampleCap);

/// Recomputes the summary scalars from a series.
RunSummary summarize(const ScenarioConfig& cfg, const TimeGrid& grid, std::span<const double> i_minus,
                     const AveragedSeries& averaged);

std::vector<PhasePoint> run_phase_scan(const ScenarioConfig& cfg);

struct SweepRow {
    double tau_d = 0.0;
    double max_avg_i_minus = 0.0;
    double max_power = 0.0;
    double delta_v_over_v0 = 0.0;
    std::uint64_t determinism_hash = 0;
    std::optional<std::string> error;
};

struct SweepTable {
    std::vector<SweepRow> rows;  // in the order the delays were given
    bool monotone_in_abs_tau = true;
    std::vector<std::string> diagnostics;
};

/// One run per delay. A failing row records its error and the sweep goes on.
/// Runs execute on up to `workers` threads (0 = hardware concurrency).
SweepTable delay_sweep(const ScenarioConfig& base, std::span<const double> taus,
                       std::size_t max_samples = kDefaultSampleCap, unsigned workers = 0);

}  // namespace precursor
