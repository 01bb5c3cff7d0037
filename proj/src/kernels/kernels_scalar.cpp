#include "kernels_impl.hpp"

#include <cmath>
#include <numbers>

namespace precursor::kernels::detail {

namespace {

void scale(std::span<cplx> x, double factor)
{
    for (auto& v : x) v = {v.real() * factor, v.imag() * factor};
}

void multiply(std::span<cplx> x, std::span<const cplx> y)
{
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double a = x[i].real(), b = x[i].imag();
        const double c = y[i].real(), d = y[i].imag();
        x[i] = {a * c - b * d, a * d + b * c};
    }
}

void butterfly(std::span<cplx> x, std::span<cplx> y)
{
    constexpr double s = std::numbers::sqrt2 / 2.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const cplx a = x[i], b = y[i];
        x[i] = {(a.real() + b.real()) * s, (a.imag() + b.imag()) * s};
        y[i] = {(a.real() - b.real()) * s, (a.imag() - b.imag()) * s};
    }
}

void norm_sq(std::span<const cplx> x, std::span<double> out)
{
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

double sum(std::span<const double> x)
{
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc;
}

bool all_finite(std::span<const cplx> x)
{
    for (const auto& v : x)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

}  // namespace

const KernelSet kScalar{"scalar", scale, multiply, butterfly, norm_sq, sum, all_finite};

}  // namespace precursor::kernels::detail
