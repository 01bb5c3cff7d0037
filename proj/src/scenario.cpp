#include "precursor/scenario.hpp"

#include "precursor/error.hpp"
#include "precursor/serialization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <future>
#include <sstream>
#include <thread>

#ifndef PRECURSOR_VERSION
#define PRECURSOR_VERSION "0.0.0"
#endif

namespace precursor {

namespace {

constexpr std::array<std::string_view, 7> kPresetNames{"fig1", "fig3a", "fig3b", "fig4a", "fig4b", "fig4c", "fig4d"};

ScenarioConfig fig3_base(std::string_view name)
{
    ScenarioConfig c;
    c.name = std::string(name);
    c.z1 = 0.01;
    c.filter.delta2 = 150.0 * constants::kDelta1;
    c.grid.dt = 0.01e-9;
    c.grid.window_mode = WindowMode::FullPulse;
    c.analysis = {0.0, 1e-9};
    return c;
}

ScenarioConfig fig4_base(std::string_view name, double tau_d)
{
    ScenarioConfig c;
    c.name = std::string(name);
    c.z1 = 0.055;
    c.z2 = 0.08;
    c.filter.delta2 = 1050.0 * constants::kDelta1;
    c.tau_d = tau_d;
    c.grid.dt = 0.1e-12;
    c.grid.window_mode = WindowMode::EdgeWindow;
    c.grid.edge_window_span = 20e-9;
    c.analysis = {0.0, 5e-9};
    return c;
}

double max_of(std::span<const double> x)
{
    double m = 0.0;
    for (double v : x) m = std::max(m, v);
    return m;
}

}  // namespace

InterferometerConfig ScenarioConfig::interferometer() const
{
    InterferometerConfig c;
    switch (probe_medium) {
    case ProbeMedium::Eit:
        c.probe = eit;
        break;
    case ProbeMedium::TwoLevel:
        // Fast-light regime: the probe crystal without coupling field.
        c.probe = TwoLevelFilter{eit.alpha0, eit.k0, eit.delta1};
        break;
    case ProbeMedium::Passive:
        c.probe = PassiveHost{eit.k0};
        break;
    }
    c.host = PassiveHost{eit.k0};
    if (z2 > 0.0) c.filter = filter;
    c.z1 = z1;
    c.z2 = z2;
    c.tau_d = tau_d;
    c.omega31 = omega31;
    c.include_carrier_phase = include_carrier_phase;
    c.propagation = propagation;
    return c;
}

InputPulseSpec ScenarioConfig::simulated_pulse() const
{
    InputPulseSpec p = pulse;
    if (grid.window_mode == WindowMode::EdgeWindow) p.t0 = std::min(p.t0, grid.edge_window_span - p.tr);
    return p;
}

void ScenarioConfig::validate() const
{
    pulse.validate();
    interferometer().validate();
    detector.validate();
    require(std::isfinite(grid.dt) && grid.dt > 0.0, "scenario: grid.dt must be positive");
    require(std::isfinite(grid.min_span) && grid.min_span >= 0.0, "scenario: grid.min_span must be non-negative");
    if (grid.window_mode == WindowMode::EdgeWindow)
        require(grid.edge_window_span >= 100.0 * pulse.tr * (1.0 - 1e-12),
                "scenario: EdgeWindow requires edge_window_span >= 100 tr");
    require(std::isfinite(analysis.start) && std::isfinite(analysis.span) && analysis.span > 0.0,
            "scenario: analysis window must have positive span");
    require(scan.points >= 2 && std::isfinite(scan.half_range) && scan.half_range > 0.0,
            "scenario: phase scan needs >= 2 points and a positive range");
}

std::span<const std::string_view> preset_names() { return kPresetNames; }

ScenarioConfig preset(std::string_view name)
{
    if (name == "fig1") {
        ScenarioConfig c = fig3_base(name);
        c.kind = ScenarioKind::PhaseScan;
        return c;
    }
    if (name == "fig3a") return fig3_base(name);
    if (name == "fig3b") {
        ScenarioConfig c = fig3_base(name);
        c.z2 = 0.01;
        return c;
    }
    if (name == "fig4a") return fig4_base(name, 0.0);
    if (name == "fig4b") return fig4_base(name, -40e-15);
    if (name == "fig4c") return fig4_base(name, 40e-15);
    if (name == "fig4d") return fig4_base(name, 4e-12);

    std::ostringstream os;
    os << "unknown preset '" << name << "'; valid presets:";
    for (auto n : kPresetNames) os << ' ' << n;
    fail(ErrorClass::Config, os.str());
}

TimeGrid plan_grid(const ScenarioConfig& cfg)
{
    const InputPulseSpec p = cfg.simulated_pulse();
    double content_end = p.t0 + p.tr;
    if (cfg.grid.window_mode == WindowMode::FullPulse && cfg.z2 == 0.0 && cfg.probe_medium == ProbeMedium::Eit &&
        cfg.eit.omega_c > 0.0) {
        // The slow main field trails the pulse by ~t_g; keep it off the wrap.
        content_end += 2.0 * group_delay_estimate(cfg.eit, cfg.z1);
    }
    // Keeps |tau_d| inside the 10% guard interval.
    content_end = std::max(content_end, std::abs(cfg.tau_d) * 20.0);
    TimeGrid g = TimeGrid::covering(cfg.grid.dt, 0.0, content_end);
    if (g.span() < cfg.grid.min_span) {
        const auto n = static_cast<std::size_t>(std::ceil(cfg.grid.min_span / cfg.grid.dt));
        const TimeGrid wide = TimeGrid::padded(0.0, cfg.grid.dt, n);
        const std::size_t extra = (wide.size() - g.size()) / 2;
        g = TimeGrid(g.t_start() - static_cast<double>(extra) * g.dt(), g.dt(), wide.size());
    }
    return g;
}

std::size_t sample_cap_from_env()
{
    const char* v = std::getenv("PRECURSOR_MAX_SAMPLES");
    if (v == nullptr || *v == '\0') return kDefaultSampleCap;
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0' || n < 2) fail(ErrorClass::Config, "PRECURSOR_MAX_SAMPLES must be an integer >= 2");
    return static_cast<std::size_t>(n);
}

std::string output_dir_from_env()
{
    const char* v = std::getenv("PRECURSOR_OUTPUT_DIR");
    return (v == nullptr || *v == '\0') ? std::string(".") : std::string(v);
}

std::string_view library_version() { return PRECURSOR_VERSION; }

RunSummary summarize(const ScenarioConfig& cfg, const TimeGrid& grid, std::span<const double> i_minus,
                     const AveragedSeries& averaged)
{
    RunSummary s{};
    s.analysis_start = cfg.analysis.start;
    s.analysis_end = cfg.analysis.start + cfg.analysis.span;
    const std::size_t lo = grid.first_index_at_or_after(s.analysis_start);
    const std::size_t hi = grid.first_index_at_or_after(s.analysis_end);
    s.max_raw_i_minus = max_of(i_minus.subspan(lo, hi - lo));
    s.max_raw_i_minus_record = max_of(i_minus);
    for (std::size_t w = 0; w < averaged.value.size(); ++w) {
        const double t = averaged.time[w];
        if (t >= s.analysis_start && t < s.analysis_end) s.max_avg_i_minus = std::max(s.max_avg_i_minus, averaged.value[w]);
    }
    s.max_power = to_power(s.max_avg_i_minus, cfg.detector);
    s.bound = speed_bound(s.max_power, cfg.detector, transit_time(cfg.z1, cfg.eit.k0, cfg.omega31), cfg.tau_d);
    return s;
}

RunResult run(const ScenarioConfig& cfg, std::size_t max_samples)
{
    cfg.validate();
    if (cfg.kind != ScenarioKind::Interferometer)
        fail(ErrorClass::Config, "scenario '" + cfg.name + "' is a phase scan; use run_phase_scan / phase-scan");

    const TimeGrid grid = plan_grid(cfg);
    if (grid.size() > max_samples) {
        std::ostringstream os;
        os << "grid needs " << grid.size() << " samples, above the cap of " << max_samples
           << "; use grid.window_mode = edge_window or raise PRECURSOR_MAX_SAMPLES";
        fail(ErrorClass::Resource, os.str());
    }

    PortIntensities ports = compute_ports(cfg.interferometer(), pulse_spectrum(cfg.simulated_pulse(), grid));
    AveragedSeries averaged = boxcar_average(ports.i_minus, grid, cfg.detector);
    RunSummary summary = summarize(cfg, grid, ports.i_minus, averaged);
    std::vector<double> held = hold_on_samples(averaged, grid.size());

    RunResult r{cfg,
                grid,
                std::move(ports.i_plus),
                std::move(ports.i_minus),
                std::move(held),
                std::move(averaged),
                summary,
                std::string(library_version()),
                0};
    r.determinism_hash = write_series_csv(r, nullptr);
    return r;
}

std::vector<PhasePoint> run_phase_scan(const ScenarioConfig& cfg)
{
    cfg.validate();
    std::vector<double> detunings(cfg.scan.points);
    const double step = 2.0 * cfg.scan.half_range / static_cast<double>(cfg.scan.points - 1);
    for (std::size_t i = 0; i < detunings.size(); ++i)
        detunings[i] = -cfg.scan.half_range + static_cast<double>(i) * step;
    return phase_scan(cfg.interferometer().probe, cfg.z1, detunings, cfg.propagation);
}

SweepTable delay_sweep(const ScenarioConfig& base, std::span<const double> taus, std::size_t max_samples,
                       unsigned workers)
{
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

    auto one = [&base, max_samples](double tau) {
        SweepRow row;
        row.tau_d = tau;
        try {
            ScenarioConfig c = base;
            c.tau_d = tau;
            const RunResult r = run(c, max_samples);
            row.max_avg_i_minus = r.summary.max_avg_i_minus;
            row.max_power = r.summary.max_power;
            row.delta_v_over_v0 = r.summary.bound.delta_v_over_v0;
            row.determinism_hash = r.determinism_hash;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        return row;
    };

    SweepTable table;
    table.rows.resize(taus.size());
    for (std::size_t first = 0; first < taus.size(); first += workers) {
        const std::size_t last = std::min(taus.size(), first + workers);
        std::vector<std::future<SweepRow>> batch;
        for (std::size_t i = first; i < last; ++i) batch.push_back(std::async(std::launch::async, one, taus[i]));
        for (std::size_t i = first; i < last; ++i) table.rows[i] = batch[i - first].get();
    }

    std::vector<const SweepRow*> ok;
    for (const auto& r : table.rows) {
        if (r.error) table.diagnostics.push_back("tau_d = " + format_double(r.tau_d) + " s failed: " + *r.error);
        else ok.push_back(&r);
    }
    std::stable_sort(ok.begin(), ok.end(),
                     [](const SweepRow* a, const SweepRow* b) { return std::abs(a->tau_d) < std::abs(b->tau_d); });
    for (std::size_t i = 1; i < ok.size(); ++i) {
        if (std::abs(ok[i]->tau_d) > std::abs(ok[i - 1]->tau_d) && ok[i]->max_avg_i_minus < ok[i - 1]->max_avg_i_minus) {
            table.monotone_in_abs_tau = false;
            table.diagnostics.push_back("max averaged I- decreases from |tau_d| = " + format_double(std::abs(ok[i - 1]->tau_d)) +
                                        " s (" + format_double(ok[i - 1]->max_avg_i_minus) + ") to " +
                                        format_double(std::abs(ok[i]->tau_d)) + " s (" +
                                        format_double(ok[i]->max_avg_i_minus) + ")");
        }
    }
    return table;
}

}  // namespace precursor
