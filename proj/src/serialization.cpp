#include "precursor/serialization.hpp"

#include "precursor/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace precursor {

std::string_view to_string(ErrorClass c) noexcept
{
    switch (c) {
    case ErrorClass::InvalidArgument: return "invalid_argument";
    case ErrorClass::Config: return "config";
    case ErrorClass::Resource: return "resource";
    case ErrorClass::Io: return "io";
    case ErrorClass::Numerical: return "numerical";
    }
    return "unknown";
}

int exit_code(ErrorClass c) noexcept
{
    switch (c) {
    case ErrorClass::Config: return 3;
    case ErrorClass::InvalidArgument: return 4;
    case ErrorClass::Resource: return 5;
    case ErrorClass::Io: return 6;
    case ErrorClass::Numerical: return 7;
    }
    return 70;
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Ctx {
    std::size_t line;
    std::string_view key;

    [[noreturn]] void bad(const std::string& why) const
    {
        std::ostringstream os;
        os << "config line " << line << " (" << key << "): " << why;
        fail(ErrorClass::Config, os.str());
    }
};

double parse_number(std::string_view v, const Ctx& ctx, bool angular)
{
    double x = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
    if (res.ec != std::errc{} || !std::isfinite(x)) ctx.bad("expected a number, got '" + std::string(v) + "'");
    const std::string_view suffix = trim(std::string_view(res.ptr, static_cast<std::size_t>(v.data() + v.size() - res.ptr)));
    if (suffix.empty()) return x;
    static const std::map<std::string_view, double> scales{
        {"Hz_x2pi", 1.0}, {"kHz_x2pi", 1e3}, {"MHz_x2pi", 1e6}, {"GHz_x2pi", 1e9}};
    const auto it = scales.find(suffix);
    if (it == scales.end()) ctx.bad("unknown unit suffix '" + std::string(suffix) + "'");
    if (!angular) ctx.bad("unit suffix '" + std::string(suffix) + "' only applies to angular frequencies");
    return constants::kTwoPi * it->second * x;
}

bool parse_bool(std::string_view v, const Ctx& ctx)
{
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    ctx.bad("expected true/false, got '" + std::string(v) + "'");
}

template <typename E>
E parse_enum(std::string_view v, const Ctx& ctx, std::initializer_list<std::pair<std::string_view, E>> options)
{
    std::string valid;
    for (const auto& [name, value] : options) {
        if (v == name) return value;
        valid += valid.empty() ? "" : ", ";
        valid += name;
    }
    ctx.bad("'" + std::string(v) + "' is not one of: " + valid);
}

using Setter = std::function<void(ScenarioConfig&, std::string_view, const Ctx&)>;

Setter num(double ScenarioConfig::*field)
{
    return [field](ScenarioConfig& c, std::string_view v, const Ctx& ctx) { c.*field = parse_number(v, ctx, false); };
}

template <typename Get>
Setter num_at(Get get, bool angular = false)
{
    return [get, angular](ScenarioConfig& c, std::string_view v, const Ctx& ctx) { get(c) = parse_number(v, ctx, angular); };
}

const std::map<std::string_view, Setter>& setters()
{
    static const std::map<std::string_view, Setter> table = [] {
        std::map<std::string_view, Setter> t;
        t["name"] = [](ScenarioConfig& c, std::string_view v, const Ctx&) { c.name = std::string(v); };
        t["kind"] = [](ScenarioConfig& c, std::string_view v, const Ctx& ctx) {
            c.kind = parse_enum<ScenarioKind>(v, ctx, {{"interferometer", ScenarioKind::Interferometer},
                                                        {"phase_scan", ScenarioKind::PhaseScan}});
        };

        t["pulse.t0"] = num_at([](ScenarioConfig& c) -> double& { return c.pulse.t0; });
        t["pulse.tr"] = num_at([](ScenarioConfig& c) -> double& { return c.pulse.tr; });
        t["pulse.amplitude"] = num_at([](ScenarioConfig& c) -> double& { return c.pulse.amplitude; });
        t["pulse.edge_profile"] = [](ScenarioConfig& c, std::string_view v, const Ctx& ctx) {
            c.pulse.edge_profile = parse_enum<EdgeProfile>(
                v, ctx, {{"linear_ramp", EdgeProfile::LinearRamp}, {"raised_cosine", EdgeProfile::RaisedCosine}});
        };

        t["probe.medium"] = [](ScenarioConfig& c, std::string_view v, const Ctx& ctx) {
            c.probe_medium = parse_enum<ProbeMedium>(
                v, ctx, {{"eit", ProbeMedium::Eit}, {"two_level", ProbeMedium::TwoLevel}, {"passive", ProbeMedium::Passive}});
        };
        t["eit.alpha0"] = num_at([](ScenarioConfig& c) -> double& { return c.eit.alpha0; });
        t["eit.k0"] = num_at([](ScenarioConfig& c) -> double& { return c.eit.k0; });
        t["eit.delta1"] = num_at([](ScenarioConfig& c) -> double& { return c.eit.delta1; }, true);
        t["eit.gamma12"] = num_at([](ScenarioConfig& c) -> double& { return c.eit.gamma12; }, true);
        t["eit.omega_c"] = num_at([](ScenarioConfig& c) -> double& { return c.eit.omega_c; }, true);
        t["filter.alpha0"] = num_at([](ScenarioConfig& c) -> double& { return c.filter.alpha0; });
        t["filter.k0"] = num_at([](ScenarioConfig& c) -> double& { return c.filter.k0; });
        t["filter.delta2"] = num_at([](ScenarioConfig& c) -> double& { return c.filter.delta2; }, true);

        t["interferometer.z1"] = num(&ScenarioConfig::z1);
        t["interferometer.z2"] = num(&ScenarioConfig::z2);
        t["interferometer.tau_d"] = num(&ScenarioConfig::tau_d);
        t["interferometer.omega31"] = num_at([](ScenarioConfig& c) -> double& { return c.omega31; }, true);
        t["interferometer.include_carrier_phase"] = [](ScenarioConfig& c, std::string_view v, const Ctx& ctx) {
            c.include_carrier_phase = parse_bool(v, ctx);
        };
        t["interferometer.propagation"] = [](ScenarioConfig& c, std::string_view v, const Ctx& ctx) {
            c.propagation = parse_enum<Propagation>(
                v, ctx, {{"linearized", Propagation::Linearized}, {"exact_root", Propagation::ExactRoot}});
        };

        t["detector.bandwidth"] = num_at([](ScenarioConfig& c) -> double& { return c.detector.bandwidth; });
        t["detector.window"] = num_at([](ScenarioConfig& c) -> double& { return c.detector.window; });
        t["detector.probe_power"] = num_at([](ScenarioConfig& c) -> double& { return c.detector.probe_power; });
        t["detector.threshold_power"] = num_at([](ScenarioConfig& c) -> double& { return c.detector.threshold_power; });
        t["detector.window_offset"] = num_at([](ScenarioConfig& c) -> double& { return c.detector.window_offset; });
        t["detector.averaging"] = [](ScenarioConfig& c, std::string_view v, const Ctx& ctx) {
            c.detector.averaging =
                parse_enum<Averaging>(v, ctx, {{"tumbling", Averaging::Tumbling}, {"sliding", Averaging::Sliding}});
        };

        t["grid.dt"] = num_at([](ScenarioConfig& c) -> double& { return c.grid.dt; });
        t["grid.min_span"] = num_at([](ScenarioConfig& c) -> double& { return c.grid.min_span; });
        t["grid.edge_window_span"] = num_at([](ScenarioConfig& c) -> double& { return c.grid.edge_window_span; });
        t["grid.window_mode"] = [](ScenarioConfig& c, std::string_view v, const Ctx& ctx) {
            c.grid.window_mode = parse_enum<WindowMode>(
                v, ctx, {{"full_pulse", WindowMode::FullPulse}, {"edge_window", WindowMode::EdgeWindow}});
        };

        t["analysis.start"] = num_at([](ScenarioConfig& c) -> double& { return c.analysis.start; });
        t["analysis.span"] = num_at([](ScenarioConfig& c) -> double& { return c.analysis.span; });

        t["scan.half_range"] = num_at([](ScenarioConfig& c) -> double& { return c.scan.half_range; }, true);
        t["scan.points"] = [](ScenarioConfig& c, std::string_view v, const Ctx& ctx) {
            std::size_t n = 0;
            const auto res = std::from_chars(v.data(), v.data() + v.size(), n);
            if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) ctx.bad("expected a non-negative integer");
            c.scan.points = n;
        };

        t["output.stem"] = [](ScenarioConfig& c, std::string_view v, const Ctx&) { c.outputs.stem = std::string(v); };
        t["output.csv"] = [](ScenarioConfig& c, std::string_view v, const Ctx& ctx) { c.outputs.csv = parse_bool(v, ctx); };
        t["output.json"] = [](ScenarioConfig& c, std::string_view v, const Ctx& ctx) {
            c.outputs.json = parse_bool(v, ctx);
        };
        return t;
    }();
    return table;
}

struct Entry {
    std::size_t line;
    std::string_view key;
    std::string_view value;
};

std::string_view edge_name(EdgeProfile p) { return p == EdgeProfile::LinearRamp ? "linear_ramp" : "raised_cosine"; }
std::string_view mode_name(WindowMode m) { return m == WindowMode::FullPulse ? "full_pulse" : "edge_window"; }
std::string_view averaging_name(Averaging a) { return a == Averaging::Tumbling ? "tumbling" : "sliding"; }
std::string_view propagation_name(Propagation p) { return p == Propagation::Linearized ? "linearized" : "exact_root"; }
std::string_view kind_name(ScenarioKind k) { return k == ScenarioKind::Interferometer ? "interferometer" : "phase_scan"; }
std::string_view probe_name(ProbeMedium m)
{
    switch (m) {
    case ProbeMedium::Eit: return "eit";
    case ProbeMedium::TwoLevel: return "two_level";
    case ProbeMedium::Passive: return "passive";
    }
    return "eit";
}

}  // namespace

ScenarioConfig parse_config(std::string_view text)
{
    std::vector<Entry> entries;
    std::size_t line_no = 0;
    std::optional<Entry> preset_entry;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            std::ostringstream os;
            os << "config line " << line_no << ": expected 'key = value'";
            fail(ErrorClass::Config, os.str());
        }
        Entry e{line_no, trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
        if (e.key == "preset") {
            if (preset_entry) Ctx{e.line, e.key}.bad("preset given twice");
            preset_entry = e;
        } else {
            entries.push_back(e);
        }
    }

    ScenarioConfig cfg = preset_entry ? preset(preset_entry->value) : ScenarioConfig{};
    for (const auto& e : entries) {
        const auto it = setters().find(e.key);
        if (it == setters().end()) Ctx{e.line, e.key}.bad("unknown key");
        it->second(cfg, e.value, Ctx{e.line, e.key});
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) fail(ErrorClass::Io, "cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string dump_config(const ScenarioConfig& c)
{
    std::ostringstream os;
    auto kv = [&os](std::string_view k, const auto& v) { os << k << " = " << v << '\n'; };
    auto d = [&kv](std::string_view k, double v) { kv(k, format_double(v)); };
    kv("name", c.name);
    kv("kind", kind_name(c.kind));
    d("pulse.t0", c.pulse.t0);
    d("pulse.tr", c.pulse.tr);
    d("pulse.amplitude", c.pulse.amplitude);
    kv("pulse.edge_profile", edge_name(c.pulse.edge_profile));
    kv("probe.medium", probe_name(c.probe_medium));
    d("eit.alpha0", c.eit.alpha0);
    d("eit.k0", c.eit.k0);
    d("eit.delta1", c.eit.delta1);
    d("eit.gamma12", c.eit.gamma12);
    d("eit.omega_c", c.eit.omega_c);
    d("filter.alpha0", c.filter.alpha0);
    d("filter.k0", c.filter.k0);
    d("filter.delta2", c.filter.delta2);
    d("interferometer.z1", c.z1);
    d("interferometer.z2", c.z2);
    d("interferometer.tau_d", c.tau_d);
    d("interferometer.omega31", c.omega31);
    kv("interferometer.include_carrier_phase", c.include_carrier_phase ? "true" : "false");
    kv("interferometer.propagation", propagation_name(c.propagation));
    d("detector.bandwidth", c.detector.bandwidth);
    d("detector.window", c.detector.window);
    d("detector.probe_power", c.detector.probe_power);
    d("detector.threshold_power", c.detector.threshold_power);
    d("detector.window_offset", c.detector.window_offset);
    kv("detector.averaging", averaging_name(c.detector.averaging));
    d("grid.dt", c.grid.dt);
    d("grid.min_span", c.grid.min_span);
    kv("grid.window_mode", mode_name(c.grid.window_mode));
    d("grid.edge_window_span", c.grid.edge_window_span);
    d("analysis.start", c.analysis.start);
    d("analysis.span", c.analysis.span);
    d("scan.half_range", c.scan.half_range);
    kv("scan.points", c.scan.points);
    if (!c.outputs.stem.empty()) kv("output.stem", c.outputs.stem);
    kv("output.csv", c.outputs.csv ? "true" : "false");
    kv("output.json", c.outputs.json ? "true" : "false");
    return os.str();
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h)
{
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    const auto res = std::to_chars(buf, buf + 16, v, 16);
    std::string s(buf, res.ptr);
    return std::string(16 - s.size(), '0') + s;
}

std::uint64_t write_series_csv(const RunResult& r, std::ostream* out)
{
    std::string chunk;
    chunk.reserve(1 << 20);
    chunk.append(kSeriesCsvHeader).push_back('\n');
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto flush = [&] {
        h = fnv1a64(chunk, h);
        if (out) out->write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
        chunk.clear();
    };
    char buf[32];
    auto put = [&](double v, char sep) {
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        chunk.append(buf, res.ptr);
        chunk.push_back(sep);
    };
    const bool has_plus = r.i_plus.size() == r.grid.size();
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        put(r.grid.time(i), ',');
        put(has_plus ? r.i_plus[i] : 0.0, ',');
        put(r.i_minus[i], ',');
        put(r.i_minus_avg[i], '\n');
        if (chunk.size() > (1 << 20) - 256) flush();
    }
    flush();
    return h;
}

void write_phase_scan_csv(std::span<const PhasePoint> points, std::ostream& out)
{
    out << "detuning_rad_s,phase_rad,intensity\n";
    for (const auto& p : points)
        out << format_double(p.detuning) << ',' << format_double(p.phase) << ',' << format_double(p.intensity) << '\n';
}

void write_sweep_csv(const SweepTable& table, std::ostream& out)
{
    out << "tau_d_s,max_avg_i_minus,max_power_w,delta_v_over_v0,error\n";
    for (const auto& r : table.rows) {
        out << format_double(r.tau_d) << ',' << format_double(r.max_avg_i_minus) << ',' << format_double(r.max_power)
            << ',' << format_double(r.delta_v_over_v0) << ',';
        if (r.error) {
            std::string e = *r.error;
            for (auto& ch : e)
                if (ch == ',' || ch == '\n') ch = ';';
            out << e;
        }
        out << '\n';
    }
}

nlohmann::json to_json(const ScenarioConfig& c)
{
    nlohmann::json j;
    j["name"] = c.name;
    j["kind"] = kind_name(c.kind);
    j["pulse"] = {{"t0", c.pulse.t0}, {"tr", c.pulse.tr}, {"amplitude", c.pulse.amplitude},
                  {"edge_profile", edge_name(c.pulse.edge_profile)}};
    j["probe_medium"] = probe_name(c.probe_medium);
    j["eit"] = {{"alpha0", c.eit.alpha0}, {"k0", c.eit.k0}, {"delta1", c.eit.delta1},
                {"gamma12", c.eit.gamma12}, {"omega_c", c.eit.omega_c}};
    j["filter"] = {{"alpha0", c.filter.alpha0}, {"k0", c.filter.k0}, {"delta2", c.filter.delta2}};
    j["interferometer"] = {{"z1", c.z1}, {"z2", c.z2}, {"tau_d", c.tau_d}, {"omega31", c.omega31},
                           {"include_carrier_phase", c.include_carrier_phase},
                           {"propagation", propagation_name(c.propagation)}};
    j["detector"] = {{"bandwidth", c.detector.bandwidth}, {"window", c.detector.window},
                     {"probe_power", c.detector.probe_power}, {"threshold_power", c.detector.threshold_power},
                     {"window_offset", c.detector.window_offset}, {"averaging", averaging_name(c.detector.averaging)}};
    j["grid"] = {{"dt", c.grid.dt}, {"min_span", c.grid.min_span}, {"window_mode", mode_name(c.grid.window_mode)},
                 {"edge_window_span", c.grid.edge_window_span}};
    j["analysis"] = {{"start", c.analysis.start}, {"span", c.analysis.span}};
    if (c.kind == ScenarioKind::PhaseScan) j["scan"] = {{"half_range", c.scan.half_range}, {"points", c.scan.points}};
    return j;
}

nlohmann::json to_json(const BoundReport& b)
{
    return {{"max_recorded_power_w", b.max_recorded_power},
            {"threshold_power_w", b.threshold_power},
            {"t1_s", b.t1},
            {"tau_d_inferred_floor_s", b.tau_d_inferred_floor},
            {"delta_v_over_v0", b.delta_v_over_v0},
            {"exceeds_threshold", b.exceeds_threshold}};
}

nlohmann::json to_json(const RunSummary& s)
{
    return {{"analysis_start_s", s.analysis_start},
            {"analysis_end_s", s.analysis_end},
            {"max_raw_i_minus", s.max_raw_i_minus},
            {"max_avg_i_minus", s.max_avg_i_minus},
            {"max_raw_i_minus_record", s.max_raw_i_minus_record},
            {"max_power_w", s.max_power},
            {"bound", to_json(s.bound)}};
}

nlohmann::json to_json(const SweepTable& t)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
        nlohmann::json row{{"tau_d_s", r.tau_d},
                           {"max_avg_i_minus", r.max_avg_i_minus},
                           {"max_power_w", r.max_power},
                           {"delta_v_over_v0", r.delta_v_over_v0},
                           {"determinism_hash", hex64(r.determinism_hash)}};
        if (r.error) row["error"] = *r.error;
        rows.push_back(std::move(row));
    }
    return {{"rows", rows}, {"monotone_in_abs_tau", t.monotone_in_abs_tau}, {"diagnostics", t.diagnostics}};
}

nlohmann::json result_envelope(const RunResult& r)
{
    return {{"status", "ok"},
            {"version", r.version},
            {"determinism_hash", hex64(r.determinism_hash)},
            {"grid", {{"t_start_s", r.grid.t_start()}, {"dt_s", r.grid.dt()}, {"n", r.grid.size()}}},
            {"config", to_json(r.config)},
            {"summary", to_json(r.summary)}};
}

nlohmann::json error_envelope(std::string_view error_class, std::string_view message)
{
    return {{"status", "error"}, {"error_class", error_class}, {"message", message}};
}

}  // namespace precursor
