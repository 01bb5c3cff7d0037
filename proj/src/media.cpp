#include "precursor/media.hpp"

#include "precursor/error.hpp"

#include <cmath>

namespace precursor {

namespace {

constexpr cplx kI{0.0, 1.0};

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
bool finite_pos(double x) { return std::isfinite(x) && x > 0.0; }

cplx checked_ratio(cplx num, cplx den, const char* what)
{
    if (den == cplx{0.0, 0.0}) fail(ErrorClass::Numerical, std::string(what) + ": susceptibility denominator vanishes");
    return num / den;
}

}  // namespace

void EitThreeLevel::validate() const
{
    require(finite_pos(alpha0), "EIT medium: alpha0 must be positive");
    require(finite_pos(k0), "EIT medium: k0 must be positive");
    require(finite_pos(delta1), "EIT medium: delta1 must be positive");
    require(finite_nonneg(gamma12), "EIT medium: gamma12 must be non-negative");
    require(finite_nonneg(omega_c), "EIT medium: omega_c must be non-negative");
}

void TwoLevelFilter::validate() const
{
    require(finite_pos(alpha0), "filter: alpha0 must be positive");
    require(finite_pos(k0), "filter: k0 must be positive");
    require(finite_pos(delta2), "filter: delta2 must be positive");
}

void PassiveHost::validate() const { require(finite_pos(k0), "host: k0 must be positive"); }

void validate(const MediumModel& m)
{
    std::visit([](const auto& v) { v.validate(); }, m);
}

cplx chi(const EitThreeLevel& m, double d)
{
    const cplx a = d + kI * m.gamma12;
    const cplx b = d + kI * m.delta1;
    return (m.alpha0 / m.k0) * checked_ratio(4.0 * a * m.delta1, m.omega_c * m.omega_c - 4.0 * a * b, "EIT");
}

cplx chi(const TwoLevelFilter& m, double d)
{
    return (m.alpha0 / m.k0) * checked_ratio(m.delta2, -(d + kI * m.delta2), "filter");
}

cplx chi(const PassiveHost&, double) { return {0.0, 0.0}; }

cplx chi(const MediumModel& m, double d)
{
    return std::visit([d](const auto& v) { return chi(v, d); }, m);
}

cplx wavenumber_excess(const MediumModel& m, double d, Propagation p)
{
    const double k0 = std::visit([](const auto& v) { return v.k0; }, m);
    const cplx x = chi(m, d);
    if (p == Propagation::ExactRoot) return k0 * (std::sqrt(1.0 + x) - 1.0);
    return 0.5 * k0 * x;
}

cplx transfer(const MediumModel& m, double z, double d, Propagation p)
{
    require(std::isfinite(z) && z >= 0.0, "transfer: slab length must be non-negative");
    if (std::holds_alternative<PassiveHost>(m) || z == 0.0) return {1.0, 0.0};
    return std::exp(kI * wavenumber_excess(m, d, p) * z);
}

void transfer_block(const MediumModel& m, double z, const TimeGrid& grid, std::size_t first, std::span<cplx> out,
                    Propagation p)
{
    require(first + out.size() <= grid.size(), "transfer_block: range exceeds grid");
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = transfer(m, z, grid.detuning(first + j), p);
}

std::vector<PhasePoint> phase_scan(const MediumModel& m, double z, std::span<const double> detunings, Propagation p)
{
    validate(m);
    require(std::isfinite(z) && z >= 0.0, "phase_scan: slab length must be non-negative");
    std::vector<PhasePoint> out;
    out.reserve(detunings.size());
    for (double d : detunings) {
        const cplx phase = wavenumber_excess(m, d, p) * z;
        out.push_back({d, phase.real(), std::exp(-2.0 * phase.imag())});
    }
    return out;
}

double group_delay_estimate(const EitThreeLevel& m, double z)
{
    m.validate();
    require(m.omega_c > 0.0, "group delay: undefined without a coupling field (omega_c = 0)");
    require(std::isfinite(z) && z >= 0.0, "group delay: slab length must be non-negative");
    return 2.0 * m.alpha0 * z * m.delta1 / (m.omega_c * m.omega_c);
}

double refractive_index(double k0, double carrier_frequency)
{
    return k0 * constants::kSpeedOfLight / carrier_frequency;
}

}  // namespace precursor
