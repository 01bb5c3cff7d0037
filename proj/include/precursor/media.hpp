#pragma once

// Linear susceptibilities of the probe crystal (EIT Lambda system), the
// absorption filter (bare two-level line), and the passive reference host,
// plus the transfer functions they induce on a detuning-indexed envelope.

#include "precursor/constants.hpp"
#include "precursor/spectral.hpp"

#include <span>
#include <variant>
#include <vector>

namespace precursor {

/// Probe crystal under EIT.
///   chi = (alpha0/k0) * 4 (D + i g12) d1 / (Oc^2 - 4 (D + i g12)(D + i d1))
struct EitThreeLevel {
    double alpha0 = constants::kAlpha0;   // 1/m
    double k0 = constants::kK0;           // 1/m
    double delta1 = constants::kDelta1;   // rad/s
    double gamma12 = constants::kGamma12; // rad/s
    double omega_c = constants::kCouplingRabiDefault;  // rad/s

    void validate() const;
};

/// Pumped absorption line without coupling field.
///   chi = (alpha0/k0) * d2 / (-(D + i d2))
struct TwoLevelFilter {
    double alpha0 = constants::kAlpha0;
    double k0 = constants::kK0;
    double delta2 = 150.0 * constants::kDelta1;

    void validate() const;
};

/// Undoped host crystal. Its phase k0*z is common to both interferometer
/// arms and is factored out, so chi = 0 and the transfer is unity.
struct PassiveHost {
    double k0 = constants::kK0;

    void validate() const;
};

using MediumModel = std::variant<EitThreeLevel, TwoLevelFilter, PassiveHost>;

void validate(const MediumModel& m);

cplx chi(const EitThreeLevel& m, double detuning);
cplx chi(const TwoLevelFilter& m, double detuning);
cplx chi(const PassiveHost& m, double detuning);
cplx chi(const MediumModel& m, double detuning);

enum class Propagation {
    Linearized,  // k = k0 (1 + chi/2)
    ExactRoot,   // k = k0 sqrt(1 + chi)
};

/// Wavenumber excess k(D) - k0 of the medium.
cplx wavenumber_excess(const MediumModel& m, double detuning, Propagation p = Propagation::Linearized);

/// Field transfer exp(i (k(D) - k0) z) through a slab of length z.
cplx transfer(const MediumModel& m, double z, double detuning, Propagation p = Propagation::Linearized);

/// Fills out[j] with the transfer at storage index first + j of the grid.
void transfer_block(const MediumModel& m, double z, const TimeGrid& grid, std::size_t first,
                    std::span<cplx> out, Propagation p = Propagation::Linearized);

struct PhasePoint {
    double detuning;   // rad/s
    double phase;      // rad, Re[(k - k0) z]
    double intensity;  // exp(-2 Im[(k - k0) z])
};

std::vector<PhasePoint> phase_scan(const MediumModel& m, double z, std::span<const double> detunings,
                                   Propagation p = Propagation::Linearized);

/// Slow-light delay of the main field, 2 alpha0 z delta1 / Oc^2.
double group_delay_estimate(const EitThreeLevel& m, double z);

/// n0 = k0 c / omega31.
double refractive_index(double k0, double carrier_frequency = constants::kCarrierFrequency);

}  // namespace precursor
