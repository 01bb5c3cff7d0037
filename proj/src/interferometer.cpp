#include "precursor/interferometer.hpp"

#include "precursor/error.hpp"
#include "precursor/kernels.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace precursor {

namespace {

constexpr std::size_t kBlock = 4096;
constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

void check_delay(const InterferometerConfig& cfg, const TimeGrid& grid)
{
    if (std::abs(cfg.tau_d) >= grid.guard_interval()) {
        std::ostringstream os;
        os << "interferometer: |tau_d| = " << std::abs(cfg.tau_d) << " s reaches the grid guard interval ("
           << grid.guard_interval() << " s); the delayed field would wrap around";
        fail(ErrorClass::InvalidArgument, os.str());
    }
}

// x *= T_probe(D) * exp(i D tau_d) [* exp(i omega31 tau_d)], blockwise.
void apply_h_arm(const InterferometerConfig& cfg, const TimeGrid& grid, std::span<cplx> x)
{
    const auto& k = kernels::active();
    const cplx carrier = cfg.include_carrier_phase ? std::polar(1.0, cfg.omega31 * cfg.tau_d) : cplx{1.0, 0.0};
    std::array<cplx, kBlock> t{};
    for (std::size_t first = 0; first < x.size(); first += kBlock) {
        const std::size_t len = std::min(kBlock, x.size() - first);
        std::span<cplx> block(t.data(), len);
        transfer_block(cfg.probe, cfg.z1, grid, first, block, cfg.propagation);
        if (cfg.tau_d != 0.0 || cfg.include_carrier_phase) {
            for (std::size_t j = 0; j < len; ++j)
                block[j] *= carrier * std::polar(1.0, grid.detuning(first + j) * cfg.tau_d);
        }
        k.multiply(x.subspan(first, len), block);
    }
}

void apply_slab(const MediumModel& m, double z, const TimeGrid& grid, std::span<cplx> x, Propagation p)
{
    const auto& k = kernels::active();
    std::array<cplx, kBlock> t{};
    for (std::size_t first = 0; first < x.size(); first += kBlock) {
        const std::size_t len = std::min(kBlock, x.size() - first);
        std::span<cplx> block(t.data(), len);
        transfer_block(m, z, grid, first, block, p);
        k.multiply(x.subspan(first, len), block);
    }
}

std::vector<double> intensity_of(std::vector<cplx>&& spectrum)
{
    transform_in_place(spectrum, TransformDirection::Inverse);
    if (!kernels::active().all_finite(spectrum))
        fail(ErrorClass::Numerical, "interferometer: non-finite field after inverse transform");
    std::vector<double> out(spectrum.size());
    kernels::active().norm_sq(spectrum, out);
    return out;
}

void require_same_grid(const Spectrum& a, const Spectrum& b)
{
    if (!(a.grid() == b.grid())) fail(ErrorClass::InvalidArgument, "interferometer: spectra are on different grids");
}

}  // namespace

void InterferometerConfig::validate() const
{
    precursor::validate(probe);
    host.validate();
    require(std::isfinite(z1) && z1 > 0.0, "interferometer: z1 must be positive");
    require(std::isfinite(z2) && z2 >= 0.0, "interferometer: z2 must be non-negative");
    require(z2 == 0.0 || filter.has_value(), "interferometer: z2 > 0 requires a filter medium");
    if (filter) filter->validate();
    require(std::isfinite(tau_d), "interferometer: tau_d must be finite");
    require(std::isfinite(omega31) && omega31 > 0.0, "interferometer: omega31 must be positive");
}

PathSpectra propagate_paths(const InterferometerConfig& cfg, const Spectrum& input)
{
    cfg.validate();
    check_delay(cfg, input.grid());
    std::vector<cplx> h(input.amplitudes().begin(), input.amplitudes().end());
    std::vector<cplx> v = h;
    kernels::active().scale(h, kInvSqrt2);
    kernels::active().scale(v, kInvSqrt2);
    apply_h_arm(cfg, input.grid(), h);
    return {Spectrum(input.grid(), std::move(h)), Spectrum(input.grid(), std::move(v))};
}

Spectrum minus_port(const Spectrum& e_h, const Spectrum& e_v)
{
    require_same_grid(e_h, e_v);
    std::vector<cplx> plus(e_h.amplitudes().begin(), e_h.amplitudes().end());
    std::vector<cplx> minus(e_v.amplitudes().begin(), e_v.amplitudes().end());
    kernels::active().butterfly(plus, minus);
    return Spectrum(e_h.grid(), std::move(minus));
}

InterferenceRecord interfere(const Spectrum& e_h, const Spectrum& e_v)
{
    require_same_grid(e_h, e_v);
    std::vector<cplx> plus(e_h.amplitudes().begin(), e_h.amplitudes().end());
    std::vector<cplx> minus(e_v.amplitudes().begin(), e_v.amplitudes().end());
    kernels::active().butterfly(plus, minus);

    InterferenceRecord rec{e_h.grid(), {}, {}, {}, {}};
    rec.i_plus = intensity_of(std::move(plus));
    rec.i_minus = intensity_of(std::move(minus));
    rec.e_h_intensity = intensity_of({e_h.amplitudes().begin(), e_h.amplitudes().end()});
    rec.e_v_intensity = intensity_of({e_v.amplitudes().begin(), e_v.amplitudes().end()});
    return rec;
}

std::vector<double> apply_filter(const Spectrum& difference, const TwoLevelFilter& filter, double z2, Propagation p)
{
    filter.validate();
    require(std::isfinite(z2) && z2 >= 0.0, "filter: z2 must be non-negative");
    std::vector<cplx> d(difference.amplitudes().begin(), difference.amplitudes().end());
    if (z2 > 0.0) apply_slab(filter, z2, difference.grid(), d, p);
    return intensity_of(std::move(d));
}

InterferenceRecord run_interferometer(const InterferometerConfig& cfg, const InputPulseSpec& pulse,
                                      const TimeGrid& grid)
{
    cfg.validate();
    const Spectrum input = pulse_spectrum(pulse, grid);
    const PathSpectra paths = propagate_paths(cfg, input);
    InterferenceRecord rec = interfere(paths.e_h, paths.e_v);
    if (cfg.filtered())
        rec.i_minus = apply_filter(minus_port(paths.e_h, paths.e_v), *cfg.filter, cfg.z2, cfg.propagation);
    return rec;
}

PortIntensities compute_ports(const InterferometerConfig& cfg, Spectrum&& input, Ports which)
{
    cfg.validate();
    const TimeGrid grid = input.grid();
    check_delay(cfg, grid);

    std::vector<cplx> v = std::move(input).release();
    std::vector<cplx> h = v;
    const auto& k = kernels::active();
    k.scale(h, kInvSqrt2);
    k.scale(v, kInvSqrt2);
    apply_h_arm(cfg, grid, h);
    k.butterfly(h, v);  // h <- |+>, v <- |->
    if (cfg.filtered()) apply_slab(*cfg.filter, cfg.z2, grid, v, cfg.propagation);

    PortIntensities out{grid, {}, {}};
    if (which == Ports::MinusOnly) h = {};
    out.i_minus = intensity_of(std::move(v));
    v = {};
    if (which == Ports::Both) out.i_plus = intensity_of(std::move(h));
    return out;
}

}  // namespace precursor
