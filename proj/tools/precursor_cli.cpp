// Command-line front end: phase-scan, run, sweep and bound.

#include "precursor/error.hpp"
#include "precursor/scenario.hpp"
#include "precursor/serialization.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

namespace fs = std::filesystem;
using namespace precursor;

namespace {

constexpr int kUsageExit = 2;

struct Source {
    std::string preset;
    std::string config;
};

void add_source(CLI::App* cmd, Source& src, const std::string& default_preset = {})
{
    auto* p = cmd->add_option("--preset", src.preset, "Preset scenario (fig1, fig3a, fig3b, fig4a-fig4d)");
    auto* c = cmd->add_option("--config", src.config, "Scenario config file (key = value)");
    p->excludes(c);
    if (default_preset.empty()) cmd->require_option(1, 2);
    else src.preset = default_preset;
}

ScenarioConfig resolve(const Source& src)
{
    if (!src.config.empty()) return load_config(src.config);
    return preset(src.preset);
}

std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (item.empty()) continue;
        double v = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (res.ec != std::errc{} || res.ptr != item.data() + item.size() || !std::isfinite(v))
            fail(ErrorClass::Config, "cannot parse '" + std::string(item) + "' as a number in list");
        out.push_back(v);
    }
    if (out.empty()) fail(ErrorClass::Config, "empty value list");
    return out;
}

std::ofstream open_output(const fs::path& path)
{
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorClass::Io, "cannot write '" + path.string() + "'");
    return out;
}

std::string stem_of(const ScenarioConfig& cfg) { return cfg.outputs.stem.empty() ? cfg.name : cfg.outputs.stem; }

const std::vector<double> kCalibrationTaus{0.0, -4e-15, 4e-15, -40e-15, 40e-15, -400e-15, 400e-15, -4e-12, 4e-12};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectral simulator for precursor-speed polarization interferometry"};
    app.require_subcommand(1);
    std::string out_dir;
    app.add_option("--out-dir", out_dir, "Output directory (default: $PRECURSOR_OUTPUT_DIR or .)");

    Source scan_src;
    double half_range_mhz = 0.0;
    std::size_t points = 0;
    bool scan_stdout = false;
    auto* scan = app.add_subcommand("phase-scan", "Phase and intensity transmission of the probe crystal vs detuning");
    add_source(scan, scan_src, "fig1");
    scan->add_option("--half-range-mhz", half_range_mhz, "Scan +-range in MHz (x 2pi)");
    scan->add_option("--points", points, "Number of detuning points");
    scan->add_flag("--stdout", scan_stdout, "Write the CSV to stdout instead of a file");

    Source run_src;
    bool no_files = false;
    auto* run_cmd = app.add_subcommand("run", "Simulate one scenario and write its time series");
    add_source(run_cmd, run_src);
    run_cmd->add_flag("--summary-only", no_files, "Print the JSON envelope without writing files");

    Source sweep_src;
    std::string taus_text;
    auto* sweep = app.add_subcommand("sweep", "Run a scenario for a list of injected delays");
    add_source(sweep, sweep_src, "fig4a");
    sweep->add_option("--taus", taus_text, "Comma-separated delays in seconds")->required();

    Source bound_src;
    double max_power = 0.0;
    double tau_ref = std::nan("");
    std::string cal_taus_text;
    auto* bound = app.add_subcommand("bound", "Turn a recorded |-> power into a wavefront speed bound");
    add_source(bound, bound_src, "fig4a");
    bound->add_option("--max-power", max_power, "Maximum recorded |-> power in watts")->required();
    bound->add_option("--tau-ref", tau_ref, "Reference delay in seconds (skips calibration)");
    bound->add_option("--taus", cal_taus_text, "Calibration delays in seconds (comma-separated)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << error_envelope("usage", e.what()).dump() << '\n';
        app.exit(e);
        return kUsageExit;
    }

    try {
        const fs::path dir = out_dir.empty() ? fs::path(output_dir_from_env()) : fs::path(out_dir);
        const std::size_t cap = sample_cap_from_env();

        if (scan->parsed()) {
            ScenarioConfig cfg = resolve(scan_src);
            if (half_range_mhz > 0.0) cfg.scan.half_range = constants::kTwoPi * half_range_mhz * 1e6;
            if (points > 0) cfg.scan.points = points;
            const auto pts = run_phase_scan(cfg);
            nlohmann::json env{{"status", "ok"}, {"version", library_version()}, {"config", to_json(cfg)},
                               {"points", pts.size()}};
            if (scan_stdout) {
                write_phase_scan_csv(pts, std::cout);
                return 0;
            }
            const fs::path csv = dir / (stem_of(cfg) + "_phase.csv");
            auto out = open_output(csv);
            write_phase_scan_csv(pts, out);
            env["csv"] = csv.string();
            std::cout << env.dump(2) << '\n';
            return 0;
        }

        if (run_cmd->parsed()) {
            const ScenarioConfig cfg = resolve(run_src);
            const RunResult r = run(cfg, cap);
            nlohmann::json env = result_envelope(r);
            if (!no_files && cfg.outputs.csv) {
                const fs::path csv = dir / (stem_of(cfg) + ".csv");
                auto out = open_output(csv);
                write_series_csv(r, &out);
                env["csv"] = csv.string();
            }
            if (!no_files && cfg.outputs.json) {
                const fs::path json = dir / (stem_of(cfg) + ".json");
                open_output(json) << env.dump(2) << '\n';
            }
            std::cout << env.dump(2) << '\n';
            return 0;
        }

        if (sweep->parsed()) {
            const ScenarioConfig cfg = resolve(sweep_src);
            const auto taus = parse_list(taus_text);
            const SweepTable table = delay_sweep(cfg, taus, cap);
            nlohmann::json env{{"status", "ok"}, {"version", library_version()}, {"base", cfg.name},
                               {"sweep", to_json(table)}};
            if (cfg.outputs.csv) {
                const fs::path csv = dir / (stem_of(cfg) + "_sweep.csv");
                auto out = open_output(csv);
                write_sweep_csv(table, out);
                env["csv"] = csv.string();
            }
            std::cout << env.dump(2) << '\n';
            return 0;
        }

        if (bound->parsed()) {
            const ScenarioConfig cfg = resolve(bound_src);
            const double t1 = transit_time(cfg.z1, cfg.eit.k0, cfg.omega31);
            nlohmann::json env{{"status", "ok"}, {"version", library_version()}};
            double ref = tau_ref;
            if (std::isnan(ref)) {
                const auto taus = cal_taus_text.empty() ? kCalibrationTaus : parse_list(cal_taus_text);
                const SweepTable table = delay_sweep(cfg, taus, cap);
                // A delay of magnitude |tau| is only guaranteed to produce the
                // weaker of its two signs.
                std::map<double, double> weakest;
                for (const auto& row : table.rows) {
                    if (row.error) continue;
                    const double a = std::abs(row.tau_d);
                    auto [it, inserted] = weakest.emplace(a, row.max_power);
                    if (!inserted) it->second = std::min(it->second, row.max_power);
                }
                if (weakest.empty()) fail(ErrorClass::Numerical, "bound: every calibration run failed");
                std::vector<CalibrationPoint> cal;
                nlohmann::json cal_json = nlohmann::json::array();
                for (const auto& [tau, power] : weakest) {
                    cal.push_back({tau, power});
                    cal_json.push_back({{"tau_d_s", tau}, {"max_power_w", power}});
                }
                ref = calibrated_delay(cal, max_power);
                env["calibration"] = {{"base", cfg.name}, {"points", cal_json}};
            }
            env["bound"] = to_json(speed_bound(max_power, cfg.detector, t1, ref));
            std::cout << env.dump(2) << '\n';
            return 0;
        }
    } catch (const Error& e) {
        std::cout << error_envelope(to_string(e.error_class()), e.what()).dump() << '\n';
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.error_class());
    } catch (const std::exception& e) {
        std::cout << error_envelope("internal", e.what()).dump() << '\n';
        std::cerr << "error: " << e.what() << '\n';
        return 70;
    }
    return 0;
}
