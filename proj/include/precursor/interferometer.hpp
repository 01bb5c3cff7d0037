#pragma once

// Dual-path polarization interferometer. The H arm crosses the probe crystal
// (EIT by default), the V arm the passive reference; an artificial delay
// tau_d is applied to H, the arms are recombined into the |+> and |->
// ports, and |-> optionally crosses the absorption filter before detection.

#include "precursor/media.hpp"
#include "precursor/pulse.hpp"
#include "precursor/spectral.hpp"

#include <optional>
#include <vector>

namespace precursor {

struct InterferometerConfig {
    MediumModel probe = EitThreeLevel{};
    PassiveHost host{};
    std::optional<TwoLevelFilter> filter;
    double z1 = 0.01;      // m, both arms
    double z2 = 0.0;       // m, filter length; 0 means no filter
    double tau_d = 0.0;    // s, > 0 delays H relative to V
    double omega31 = constants::kCarrierFrequency;
    // Applies exp(i omega31 tau_d) on top of exp(i D tau_d).
    bool include_carrier_phase = false;
    Propagation propagation = Propagation::Linearized;

    void validate() const;
    bool filtered() const noexcept { return filter.has_value() && z2 > 0.0; }
};

struct PathSpectra {
    Spectrum e_h;
    Spectrum e_v;
};

/// e_h = input T_probe(D) exp(i D tau_d [+ i omega31 tau_d]) / sqrt2,
/// e_v = input / sqrt2.
PathSpectra propagate_paths(const InterferometerConfig& cfg, const Spectrum& input);

struct InterferenceRecord {
    TimeGrid grid;
    std::vector<double> i_plus;
    std::vector<double> i_minus;
    std::vector<double> e_h_intensity;
    std::vector<double> e_v_intensity;
};

/// Unfiltered port intensities |IFT[(e_h +- e_v)/sqrt2]|^2 and the per-arm
/// intensities.
InterferenceRecord interfere(const Spectrum& e_h, const Spectrum& e_v);

/// (e_h - e_v) / sqrt2, the field at the |-> port before the filter.
Spectrum minus_port(const Spectrum& e_h, const Spectrum& e_v);

/// |IFT[diff * T_filter(D; z2)]|^2.
std::vector<double> apply_filter(const Spectrum& difference, const TwoLevelFilter& filter, double z2,
                                 Propagation p = Propagation::Linearized);

/// pulse_spectrum -> propagate_paths -> interfere -> apply_filter (when configured).
InterferenceRecord run_interferometer(const InterferometerConfig& cfg, const InputPulseSpec& pulse,
                                      const TimeGrid& grid);

enum class Ports { Both, MinusOnly };

struct PortIntensities {
    TimeGrid grid;
    std::vector<double> i_plus;  // empty for Ports::MinusOnly
    std::vector<double> i_minus; // filtered when the config has a filter
};

/// Same physics as run_interferometer restricted to the two output ports,
/// working in place on the input spectrum: peak memory is two complex
/// buffers, which is what makes 2^26-sample records practical.
PortIntensities compute_ports(const InterferometerConfig& cfg, Spectrum&& input, Ports which = Ports::Both);

}  // namespace precursor
