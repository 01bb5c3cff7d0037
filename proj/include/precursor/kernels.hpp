#pragma once

// Data-parallel inner loops of the propagation pipeline. Every kernel has a
// scalar reference implementation; an AVX2/FMA variant is selected at
// runtime when the CPU supports it. Variants agree to a few ulp (FMA
// contraction and summation order differ), not bit-for-bit.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace precursor::kernels {

using cplx = std::complex<double>;

struct KernelSet {
    std::string_view name;

    /// x[i] *= factor
    void (*scale)(std::span<cplx> x, double factor);
    /// x[i] *= y[i]
    void (*multiply)(std::span<cplx> x, std::span<const cplx> y);
    /// (x, y) <- ((x + y)/sqrt2, (x - y)/sqrt2), elementwise in place.
    void (*butterfly)(std::span<cplx> x, std::span<cplx> y);
    /// out[i] = |x[i]|^2
    void (*norm_sq)(std::span<const cplx> x, std::span<double> out);
    double (*sum)(std::span<const double> x);
    bool (*all_finite)(std::span<const cplx> x);
};

enum class Backend { Scalar, Avx2 };

const KernelSet& scalar();
/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelSet* avx2();

/// The kernel set used by the library. Defaults to the best supported backend.
const KernelSet& active();

/// Returns false (and leaves the selection unchanged) if the backend is unavailable.
bool select(Backend b);

}  // namespace precursor::kernels
