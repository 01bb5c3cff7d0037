#include "precursor/pulse.hpp"

#include "precursor/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace precursor {

namespace {

double edge(EdgeProfile p, double x)
{
    x = std::clamp(x, 0.0, 1.0);
    switch (p) {
    case EdgeProfile::LinearRamp:
        return x;
    case EdgeProfile::RaisedCosine:
        return 0.5 - 0.5 * std::cos(constants::kPi * x);
    }
    return x;
}

}  // namespace

void InputPulseSpec::validate() const
{
    require(std::isfinite(t0) && t0 > 0.0, "pulse: t0 must be positive");
    require(std::isfinite(tr) && tr > 0.0, "pulse: tr must be positive");
    require(tr < t0, "pulse: rise time must be shorter than the pulse width");
    require(std::isfinite(amplitude) && amplitude > 0.0, "pulse: amplitude must be positive");
}

double envelope(const InputPulseSpec& spec, double t)
{
    return spec.amplitude * edge(spec.edge_profile, t / spec.tr) *
           edge(spec.edge_profile, (spec.t0 + spec.tr - t) / spec.tr);
}

Signal sample_pulse(const InputPulseSpec& spec, const TimeGrid& grid)
{
    spec.validate();
    if (grid.dt() > spec.tr / 10.0 * (1.0 + 1e-9)) {
        std::ostringstream os;
        os << "pulse: edge under-resolved, dt = " << grid.dt() << " s exceeds tr/10 = " << spec.tr / 10.0 << " s";
        fail(ErrorClass::InvalidArgument, os.str());
    }
    require(grid.t_start() < 0.0 && grid.t_end() > spec.t0 + spec.tr,
            "pulse: grid does not cover the pulse and its guard intervals");

    std::vector<cplx> samples(grid.size());
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = envelope(spec, grid.time(i));
    return Signal(grid, std::move(samples));
}

Spectrum pulse_spectrum(const InputPulseSpec& spec, const TimeGrid& grid)
{
    return forward_transform(sample_pulse(spec, grid));
}

}  // namespace precursor
