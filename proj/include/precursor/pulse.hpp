#pragma once

#include "precursor/constants.hpp"
#include "precursor/spectral.hpp"

namespace precursor {

enum class EdgeProfile { LinearRamp, RaisedCosine };

/// Square probe pulse with finite edges. The rise spans [0, tr]; the fall
/// starts at t0 and reaches zero at t0 + tr.
struct InputPulseSpec {
    double t0 = constants::kPulseWidth;
    double tr = constants::kRiseTime;
    double amplitude = 1.0;
    EdgeProfile edge_profile = EdgeProfile::LinearRamp;

    void validate() const;
};

/// Field envelope at time t.
double envelope(const InputPulseSpec& spec, double t);

/// Requires the grid to contain [0, t0 + tr] with samples on both sides and
/// dt <= tr/10.
Signal sample_pulse(const InputPulseSpec& spec, const TimeGrid& grid);

Spectrum pulse_spectrum(const InputPulseSpec& spec, const TimeGrid& grid);

}  // namespace precursor
