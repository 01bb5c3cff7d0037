#include "precursor/detector.hpp"

#include "precursor/error.hpp"
#include "precursor/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace precursor {

void DetectorModel::validate() const
{
    require(std::isfinite(bandwidth) && bandwidth > 0.0, "detector: bandwidth must be positive");
    require(std::isfinite(window) && window > 0.0, "detector: window must be positive");
    const double ratio = window * bandwidth;
    require(ratio >= 0.5 && ratio <= 2.0, "detector: window must be within a factor of 2 of 1/bandwidth");
    require(std::isfinite(probe_power) && probe_power > 0.0, "detector: probe power must be positive");
    require(std::isfinite(threshold_power) && threshold_power >= 0.0, "detector: threshold must be non-negative");
    require(std::isfinite(window_offset), "detector: window offset must be finite");
}

AveragedSeries boxcar_average(std::span<const double> samples, const TimeGrid& grid, const DetectorModel& det)
{
    det.validate();
    require(samples.size() == grid.size(), "boxcar: series length does not match grid");
    if (det.window < 2.0 * grid.dt()) {
        std::ostringstream os;
        os << "boxcar: window " << det.window << " s is shorter than two samples (dt = " << grid.dt() << " s)";
        fail(ErrorClass::InvalidArgument, os.str());
    }

    const auto& k = kernels::active();
    const auto m = static_cast<std::size_t>(std::llround(det.window / grid.dt()));
    const std::size_t n = samples.size();
    AveragedSeries out;
    out.mode = det.averaging;

    if (det.averaging == Averaging::Sliding) {
        const std::size_t half = m / 2;
        out.time.resize(n);
        out.value.resize(n);
        out.first.resize(n);
        out.count.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t lo = i >= half ? i - half : 0;
            const std::size_t hi = std::min(n, lo + m);
            out.time[i] = grid.time(i);
            out.first[i] = lo;
            out.count[i] = hi - lo;
            out.value[i] = k.sum(samples.subspan(lo, hi - lo)) / static_cast<double>(hi - lo);
        }
        return out;
    }

    // Boundaries at anchor + j*m; anchor is the sample at t = window_offset,
    // folded into [0, m).
    const double anchor_pos = std::round((det.window_offset - grid.t_start()) / grid.dt());
    const auto mm = static_cast<long long>(m);
    long long anchor = static_cast<long long>(anchor_pos) % mm;
    if (anchor < 0) anchor += mm;

    auto push = [&](std::size_t lo, std::size_t hi) {
        out.first.push_back(lo);
        out.count.push_back(hi - lo);
        out.value.push_back(k.sum(samples.subspan(lo, hi - lo)) / static_cast<double>(hi - lo));
        out.time.push_back(grid.t_start() + 0.5 * static_cast<double>(lo + hi - 1) * grid.dt());
    };
    std::size_t lo = 0;
    if (anchor > 0) {
        push(0, static_cast<std::size_t>(anchor));
        lo = static_cast<std::size_t>(anchor);
    }
    for (; lo < n; lo += m) push(lo, std::min(n, lo + m));
    return out;
}

std::vector<double> hold_on_samples(const AveragedSeries& avg, std::size_t n)
{
    std::vector<double> out(n, 0.0);
    if (avg.mode == Averaging::Sliding) {
        std::copy_n(avg.value.begin(), std::min(n, avg.value.size()), out.begin());
        return out;
    }
    for (std::size_t w = 0; w < avg.value.size(); ++w) {
        const std::size_t hi = std::min(n, avg.first[w] + avg.count[w]);
        std::fill(out.begin() + static_cast<std::ptrdiff_t>(avg.first[w]), out.begin() + static_cast<std::ptrdiff_t>(hi),
                  avg.value[w]);
    }
    return out;
}

double to_power(double intensity, const DetectorModel& det) { return intensity * det.probe_power; }

BoundReport speed_bound(double max_power, const DetectorModel& det, double t1, double tau_d_ref)
{
    require(std::isfinite(t1) && t1 > 0.0, "speed_bound: t1 must be positive");
    require(std::isfinite(max_power) && max_power >= 0.0, "speed_bound: power must be non-negative");
    require(std::isfinite(tau_d_ref), "speed_bound: reference delay must be finite");
    const double tau = std::abs(tau_d_ref);
    return BoundReport{
        .max_recorded_power = max_power,
        .threshold_power = det.threshold_power,
        .t1 = t1,
        .tau_d_inferred_floor = tau,
        .delta_v_over_v0 = tau / t1,
        .exceeds_threshold = max_power > det.threshold_power,
    };
}

double transit_time(double z1, double k0, double omega31)
{
    require(std::isfinite(z1) && z1 > 0.0, "transit_time: z1 must be positive");
    require(std::isfinite(k0) && k0 > 0.0, "transit_time: k0 must be positive");
    require(std::isfinite(omega31) && omega31 > 0.0, "transit_time: omega31 must be positive");
    return z1 * k0 / omega31;
}

double calibrated_delay(std::span<const CalibrationPoint> table, double recorded)
{
    require(!table.empty(), "calibrated_delay: empty calibration table");
    std::vector<CalibrationPoint> sorted(table.begin(), table.end());
    for (auto& p : sorted) p.tau_d = std::abs(p.tau_d);
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.tau_d < b.tau_d; });
    for (const auto& p : sorted)
        if (p.power >= recorded) return p.tau_d;
    return sorted.back().tau_d;
}

}  // namespace precursor
