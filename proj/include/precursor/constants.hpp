#pragma once

#include <numbers>

namespace precursor::constants {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Nd:YVO4 4I9/2 -> 4F3/2 line and the crystal parameters used throughout.
inline constexpr double kTransitionWavelength = 879.705e-9;  // m
inline constexpr double kCarrierFrequency = kTwoPi * kSpeedOfLight / kTransitionWavelength;  // rad/s
inline constexpr double kAlpha0 = 4130.0;        // 1/m
inline constexpr double kK0 = 1.55e7;            // 1/m
inline constexpr double kDelta1 = kTwoPi * 1e6;  // rad/s
inline constexpr double kGamma12 = kTwoPi * 200.0;
// Not fixed by the measurement scheme; sets t_g ~ 0.8 us for a 1 cm crystal.
inline constexpr double kCouplingRabiDefault = kTwoPi * 4e6;

// Probe pulse.
inline constexpr double kPulseWidth = 4e-6;  // s
inline constexpr double kRiseTime = 0.1e-9;  // s

// Detection.
inline constexpr double kDetectorBandwidth = 5e9;  // Hz
inline constexpr double kBoxcarWindow = 0.2e-9;    // s
inline constexpr double kProbePower = 1e-3;        // W
inline constexpr double kThresholdPower = 2.5e-12; // W

}  // namespace precursor::constants
