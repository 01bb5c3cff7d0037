#pragma once

// Uniform time grids, complex envelopes, and the unitary transform pair
// between time samples and detuning-indexed spectra.
//
// Conventions (fields evolve as exp(-i*omega*t)):
//   forward:  X[k] = n^{-1/2} sum_j x[j] exp(+i * D_k * (t_j - t_start))
//   inverse:  x[j] = n^{-1/2} sum_k X[k] exp(-i * D_k * (t_j - t_start))
// with D_k = 2*pi*k'/(n*dt) and k' the signed index in (-n/2, n/2]. A
// spectrum multiplied by exp(+i*D*tau) therefore inverts to the original
// signal delayed by tau. Spectral phases are referenced to the grid origin.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace precursor {

using cplx = std::complex<double>;

class TimeGrid {
public:
    /// n must be a power of two >= 2; dt > 0.
    TimeGrid(double t_start, double dt, std::size_t n);

    /// Rounds requested_n up to the next power of two.
    static TimeGrid padded(double t_start, double dt, std::size_t requested_n);

    /// Smallest power-of-two grid holding [content_start, content_end] with at
    /// least guard_fraction of the total span free on each side. t = 0 falls on
    /// a sample whenever content_start is a multiple of dt.
    static TimeGrid covering(double dt, double content_start, double content_end,
                             double guard_fraction = kMinGuardFraction);

    double t_start() const noexcept { return t_start_; }
    double dt() const noexcept { return dt_; }
    std::size_t size() const noexcept { return n_; }
    double span() const noexcept { return static_cast<double>(n_) * dt_; }
    double t_end() const noexcept { return t_start_ + span(); }

    double time(std::size_t i) const noexcept { return t_start_ + static_cast<double>(i) * dt_; }

    /// Index of the first sample with time >= t (clamped to [0, n]).
    std::size_t first_index_at_or_after(double t) const noexcept;

    /// Signed bin index k' in (-n/2, n/2] for storage index k.
    long long signed_bin(std::size_t k) const noexcept;
    /// Detuning D_k in rad/s.
    double detuning(std::size_t k) const noexcept;
    double detuning_step() const noexcept;
    /// Largest representable |D| (the Nyquist detuning).
    double max_detuning() const noexcept;

    /// Shortest guard every `covering` grid guarantees on each side. Delays
    /// longer than this risk wraparound.
    double guard_interval() const noexcept { return kMinGuardFraction * span(); }

    bool operator==(const TimeGrid&) const = default;

    static constexpr double kMinGuardFraction = 0.1;

private:
    double t_start_;
    double dt_;
    std::size_t n_;
};

/// Time-domain complex envelope on a grid. Samples are finite.
class Signal {
public:
    Signal(TimeGrid grid, std::vector<cplx> samples);

    const TimeGrid& grid() const noexcept { return grid_; }
    std::span<const cplx> samples() const noexcept { return samples_; }
    std::vector<cplx> release() && { return std::move(samples_); }

private:
    TimeGrid grid_;
    std::vector<cplx> samples_;
};

/// Detuning-domain amplitudes; storage index k holds detuning grid.detuning(k).
class Spectrum {
public:
    Spectrum(TimeGrid grid, std::vector<cplx> amplitudes);

    const TimeGrid& grid() const noexcept { return grid_; }
    std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }
    std::span<cplx> amplitudes() noexcept { return amplitudes_; }
    std::vector<cplx> release() && { return std::move(amplitudes_); }

private:
    TimeGrid grid_;
    std::vector<cplx> amplitudes_;
};

Spectrum forward_transform(const Signal& s);
Spectrum forward_transform(Signal&& s);
Signal inverse_transform(const Spectrum& sp);
Signal inverse_transform(Spectrum&& sp);

enum class TransformDirection { Forward, Inverse };

/// In-place unitary transform of a power-of-two buffer; the building block
/// behind forward_transform / inverse_transform.
void transform_in_place(std::span<cplx> data, TransformDirection dir);

/// Sum |x|^2 * dt: the energy of a signal, or of a spectrum under the unitary
/// convention (identical by Parseval).
double energy(std::span<const cplx> x, double dt);

}  // namespace precursor
