#pragma once

#include "thzplan/linkbudget.hpp"

#include <array>

namespace thzplan::defaults {

// Baseline indoor profile used by the command line tools and tests.
inline constexpr double kHumidityPercent = 60.0;
inline constexpr double kTemperatureC = 25.0;
inline constexpr double kTotalPowerDbm = 0.0;
inline constexpr double kNoiseDensityDbGhz = -193.0;
inline constexpr double kBandwidthHz = 10e9;
inline constexpr double kSpectralEfficiency = 0.1; // bits/s/Hz
inline constexpr double kBeamwidthDeg = 20.0;
inline constexpr double kRoomLengthM = 10.0;
inline constexpr double kReferenceDistanceM = 5.0;
inline constexpr double kLossCutoffDb = 3.0;
inline constexpr double kMinChannelWidthHz = 1e9;

// Antenna gain normalization fitted against the bundled reference dataset
// (see data/ and the calibrate_gain_constant operation for re-deriving a
// deployment-specific value from a trusted power measurement).
inline constexpr double kGainConstant = 1.7655384154887716e-05;

// Default band plan: center frequencies of the ten canonical sub-channels,
// one per THz block.
inline constexpr std::array<double, 10> kBandPlanHz = {
    0.32e12, 1.51e12, 2.52e12, 3.42e12, 4.91e12,
    5.72e12, 6.57e12, 7.19e12, 8.83e12, 9.57e12,
};

// Spectral-efficiency rows of the AP-count matrix report.
inline constexpr std::array<double, 4> kMatrixSeRows = {2.0, 1.0, 0.5, 0.1};

inline RadioConfig radio_config() {
    RadioConfig cfg;
    cfg.total_power_dbm = kTotalPowerDbm;
    cfg.noise_density_db_ghz = kNoiseDensityDbGhz;
    cfg.beamwidth_deg = kBeamwidthDeg;
    cfg.gain_constant = kGainConstant;
    cfg.bandwidth_hz = kBandwidthHz;
    return cfg;
}

} // namespace thzplan::defaults
