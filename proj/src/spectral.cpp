#include "precursor/spectral.hpp"

#include "precursor/constants.hpp"
#include "precursor/error.hpp"
#include "precursor/kernels.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <mutex>
#include <sstream>

namespace precursor {

namespace {

bool is_pow2(std::size_t n) { return n >= 2 && std::has_single_bit(n); }

// The FFTW planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

}  // namespace

TimeGrid::TimeGrid(double t_start, double dt, std::size_t n) : t_start_(t_start), dt_(dt), n_(n)
{
    require(std::isfinite(t_start), "TimeGrid: t_start must be finite");
    require(std::isfinite(dt) && dt > 0.0, "TimeGrid: dt must be positive");
    if (!is_pow2(n)) {
        std::ostringstream os;
        os << "TimeGrid: sample count " << n << " is not a power of two >= 2";
        fail(ErrorClass::InvalidArgument, os.str());
    }
}

TimeGrid TimeGrid::padded(double t_start, double dt, std::size_t requested_n)
{
    return TimeGrid(t_start, dt, std::bit_ceil(std::max<std::size_t>(requested_n, 2)));
}

TimeGrid TimeGrid::covering(double dt, double content_start, double content_end, double guard_fraction)
{
    require(std::isfinite(dt) && dt > 0.0, "TimeGrid: dt must be positive");
    require(content_end > content_start, "TimeGrid: empty content interval");
    require(guard_fraction >= 0.0 && guard_fraction < 0.5, "TimeGrid: guard fraction must lie in [0, 0.5)");

    const double content = content_end - content_start;
    const double needed = std::ceil(content / (dt * (1.0 - 2.0 * guard_fraction)));
    require(needed < 0x1p62, "TimeGrid: requested span is too large for dt");
    const auto n = std::bit_ceil(std::max<std::size_t>(static_cast<std::size_t>(needed) + 1, 2));
    const auto content_samples = static_cast<std::size_t>(std::ceil(content / dt));
    const std::size_t lead = (n - content_samples) / 2;
    return TimeGrid(content_start - static_cast<double>(lead) * dt, dt, n);
}

std::size_t TimeGrid::first_index_at_or_after(double t) const noexcept
{
    const double x = std::ceil((t - t_start_) / dt_ - 1e-9);
    if (!(x > 0.0)) return 0;
    if (x >= static_cast<double>(n_)) return n_;
    return static_cast<std::size_t>(x);
}

long long TimeGrid::signed_bin(std::size_t k) const noexcept
{
    const auto kk = static_cast<long long>(k);
    const auto nn = static_cast<long long>(n_);
    return kk <= nn / 2 ? kk : kk - nn;
}

double TimeGrid::detuning_step() const noexcept { return constants::kTwoPi / span(); }

double TimeGrid::detuning(std::size_t k) const noexcept
{
    return static_cast<double>(signed_bin(k)) * detuning_step();
}

double TimeGrid::max_detuning() const noexcept { return constants::kPi / dt_; }

Signal::Signal(TimeGrid grid, std::vector<cplx> samples) : grid_(grid), samples_(std::move(samples))
{
    if (samples_.size() != grid_.size())
        fail(ErrorClass::InvalidArgument, "Signal: sample count does not match grid");
    if (!kernels::active().all_finite(samples_))
        fail(ErrorClass::Numerical, "Signal: non-finite sample (NaN or Inf)");
}

Spectrum::Spectrum(TimeGrid grid, std::vector<cplx> amplitudes) : grid_(grid), amplitudes_(std::move(amplitudes))
{
    if (amplitudes_.size() != grid_.size())
        fail(ErrorClass::InvalidArgument, "Spectrum: amplitude count does not match grid");
}

void transform_in_place(std::span<cplx> data, TransformDirection dir)
{
    if (!is_pow2(data.size())) fail(ErrorClass::InvalidArgument, "transform: length must be a power of two");

    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    const int sign = dir == TransformDirection::Forward ? FFTW_BACKWARD : FFTW_FORWARD;
    // FFTW_UNALIGNED keeps the chosen codelets independent of where the buffer
    // happens to land, so repeated runs are bit-identical.
    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    if (plan == nullptr) fail(ErrorClass::Resource, "transform: FFTW could not create a plan");
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    kernels::active().scale(data, 1.0 / std::sqrt(static_cast<double>(data.size())));
}

Spectrum forward_transform(Signal&& s)
{
    const TimeGrid grid = s.grid();
    std::vector<cplx> data = std::move(s).release();
    transform_in_place(data, TransformDirection::Forward);
    return Spectrum(grid, std::move(data));
}

Spectrum forward_transform(const Signal& s) { return forward_transform(Signal(s)); }

Signal inverse_transform(Spectrum&& sp)
{
    const TimeGrid grid = sp.grid();
    std::vector<cplx> data = std::move(sp).release();
    if (!kernels::active().all_finite(data))
        fail(ErrorClass::Numerical, "inverse_transform: non-finite spectral amplitude");
    transform_in_place(data, TransformDirection::Inverse);
    return Signal(grid, std::move(data));
}

Signal inverse_transform(const Spectrum& sp) { return inverse_transform(Spectrum(sp)); }

double energy(std::span<const cplx> x, double dt)
{
    double acc = 0.0;
    for (const auto& v : x) acc += std::norm(v);
    return acc * dt;
}

}  // namespace precursor
