// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "kernels_impl.hpp"

#include <immintrin.h>

#include <cmath>
#include <numbers>

namespace precursor::kernels::detail {

namespace {

// Two complex<double> per __m256d: [re0 im0 re1 im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

void scale(std::span<cplx> x, double factor)
{
    const __m256d f = _mm256_set1_pd(factor);
    std::size_t i = 0;
    for (; i + 2 <= x.size(); i += 2) store2(&x[i], _mm256_mul_pd(load2(&x[i]), f));
    for (; i < x.size(); ++i) x[i] = {x[i].real() * factor, x[i].imag() * factor};
}

void multiply(std::span<cplx> x, std::span<const cplx> y)
{
    std::size_t i = 0;
    for (; i + 2 <= x.size(); i += 2) {
        const __m256d a = load2(&x[i]);
        const __m256d b = load2(&y[i]);
        const __m256d b_re = _mm256_movedup_pd(b);          // c c
        const __m256d b_im = _mm256_permute_pd(b, 0b1111);  // d d
        const __m256d a_sw = _mm256_permute_pd(a, 0b0101);  // b a
        // [a*c - b*d, b*c + a*d]
        store2(&x[i], _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im)));
    }
    for (; i < x.size(); ++i) {
        const double a = x[i].real(), b = x[i].imag();
        const double c = y[i].real(), d = y[i].imag();
        x[i] = {a * c - b * d, a * d + b * c};
    }
}

void butterfly(std::span<cplx> x, std::span<cplx> y)
{
    constexpr double s = std::numbers::sqrt2 / 2.0;
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 2 <= x.size(); i += 2) {
        const __m256d a = load2(&x[i]);
        const __m256d b = load2(&y[i]);
        store2(&x[i], _mm256_mul_pd(_mm256_add_pd(a, b), vs));
        store2(&y[i], _mm256_mul_pd(_mm256_sub_pd(a, b), vs));
    }
    for (; i < x.size(); ++i) {
        const cplx a = x[i], b = y[i];
        x[i] = {(a.real() + b.real()) * s, (a.imag() + b.imag()) * s};
        y[i] = {(a.real() - b.real()) * s, (a.imag() - b.imag()) * s};
    }
}

void norm_sq(std::span<const cplx> x, std::span<double> out)
{
    std::size_t i = 0;
    for (; i + 4 <= x.size(); i += 4) {
        const __m256d a = load2(&x[i]);
        const __m256d b = load2(&x[i + 2]);
        // hadd -> [|x0|^2, |x2|^2, |x1|^2, |x3|^2]
        const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
        _mm256_storeu_pd(&out[i], _mm256_permute4x64_pd(h, 0b11011000));
    }
    for (; i < x.size(); ++i) out[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

double sum(std::span<const double> x)
{
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= x.size(); i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(&x[i]));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(&x[i + 4]));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < x.size(); ++i) total += x[i];
    return total;
}

bool all_finite(std::span<const cplx> x)
{
    // v - v is 0 for finite v and NaN for +-inf or NaN.
    __m256d bad = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= x.size(); i += 2) {
        const __m256d v = load2(&x[i]);
        bad = _mm256_or_pd(bad, _mm256_cmp_pd(_mm256_sub_pd(v, v), _mm256_setzero_pd(), _CMP_NEQ_UQ));
    }
    if (_mm256_movemask_pd(bad) != 0) return false;
    for (; i < x.size(); ++i)
        if (!std::isfinite(x[i].real()) || !std::isfinite(x[i].imag())) return false;
    return true;
}

}  // namespace

const KernelSet kAvx2{"avx2", scale, multiply, butterfly, norm_sq, sum, all_finite};

}  // namespace precursor::kernels::detail
