#pragma once

#include "precursor/constants.hpp"
#include "precursor/spectral.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace precursor {

enum class Averaging {
    Tumbling,  // non-overlapping windows, one value per window
    Sliding,   // centred moving mean, one value per sample
};

/// Bandwidth-limited detector. The window models the bandwidth; the probe
/// power converts unit-normalized intensity to watts.
struct DetectorModel {
    double bandwidth = constants::kDetectorBandwidth;  // Hz
    double window = constants::kBoxcarWindow;          // s
    double probe_power = constants::kProbePower;       // W
    double threshold_power = constants::kThresholdPower;  // W
    double window_offset = 0.0;  // s, a window boundary sits at t = window_offset
    Averaging averaging = Averaging::Tumbling;

    void validate() const;
};

struct AveragedSeries {
    Averaging mode = Averaging::Tumbling;
    std::vector<double> time;   // window centre
    std::vector<double> value;  // mean of the raw samples in the window
    std::vector<std::size_t> first;  // index of the window's first raw sample
    std::vector<std::size_t> count;  // raw samples in the window
};

/// Windows hold round(window/dt) samples and tile the whole record; the
/// windows at either end of the record may be partial.
AveragedSeries boxcar_average(std::span<const double> samples, const TimeGrid& grid, const DetectorModel& det);

/// Expands an averaged series back onto the raw sample positions (each raw
/// sample takes the value of the window that contains it).
std::vector<double> hold_on_samples(const AveragedSeries& avg, std::size_t n);

double to_power(double intensity, const DetectorModel& det);

struct BoundReport {
    double max_recorded_power;    // W
    double threshold_power;       // W
    double t1;                    // s, z1 n0 / c
    double tau_d_inferred_floor;  // s
    double delta_v_over_v0;
    bool exceeds_threshold;
};

BoundReport speed_bound(double max_power, const DetectorModel& det, double t1, double tau_d_ref);

/// Transit time z1 / v0 through the first crystal, with v0 = c/n0 and
/// n0 = k0 c / omega31.
double transit_time(double z1, double k0, double omega31 = constants::kCarrierFrequency);

struct CalibrationPoint {
    double tau_d;  // s, magnitude of the injected delay
    double power;  // W, simulated maximum recorded power at that delay
};

/// Smallest calibrated |tau_d| whose simulated power reaches `recorded`; 0 if
/// the zero-delay baseline already does, and the largest calibrated delay if
/// none does (the recording exceeds the table). Points need not be sorted.
double calibrated_delay(std::span<const CalibrationPoint> table, double recorded);

}  // namespace precursor
