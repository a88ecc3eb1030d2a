#pragma once

namespace thzplan {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s
inline constexpr double kDbPerNeper = 4.342944819032518; // 10*log10(e)

double db_to_linear(double db);
double linear_to_db(double ratio);
double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

// Radio and environment parameters shared by every link computation.
// noise_density_db_ghz is a power spectral density in dBm per GHz, so the
// noise power of a link is noise_density_db_ghz + 10*log10(B / 1 GHz) dBm.
struct RadioConfig {
    double total_power_dbm = 0.0;         // room power budget
    double noise_density_db_ghz = -193.0; // noise PSD
    double beamwidth_deg = 20.0;
    double gain_constant = 1.0;           // dimensionless antenna gain calibration
    double bandwidth_hz = 10e9;           // usable bandwidth per link
    void validate() const;
};

struct LinkGeometry {
    double frequency_hz = 0.0;
    double distance_m = 0.0;
    double absorption_per_m = 0.0; // medium absorption coefficient at frequency_hz
    void validate() const;
};

// Free-space spreading loss 20*log10(4*pi*d*f/c).
double spreading_loss_db(double frequency_hz, double distance_m);

// Beer-Lambert molecular absorption loss 10*log10(e) * k * d.
double absorption_loss_db(double absorption_per_m, double distance_m);

// Single-antenna gain 10*log10(gain_constant / beamwidth_rad^2); a link
// applies it twice (transmit and receive).
double antenna_gain_db(double beamwidth_deg, double gain_constant);

double total_path_loss_db(const LinkGeometry&);
double noise_power_dbm(const RadioConfig&);

// Shannon spectral efficiency log2(1 + SNR) with the SNR assembled in the
// linear domain from transmit power, both antenna gains, noise power,
// spreading loss and absorption loss.
double spectral_efficiency(double tx_power_dbm, const RadioConfig&, const LinkGeometry&);

// Inverse of spectral_efficiency in the transmit power.
double required_power_dbm(double se_target, const RadioConfig&, const LinkGeometry&);

// One trusted link-budget row pinning the antenna gain normalization.
struct CalibrationReference {
    double frequency_hz;
    double distance_m;
    double absorption_per_m;
    double beamwidth_deg;
    double se_target;
    double required_power_dbm;
};

// Returns the gain_constant that makes required_power_dbm reproduce the
// reference row exactly. Throws std::runtime_error on a non-finite result.
double calibrate_gain_constant(const CalibrationReference&, const RadioConfig&);

} // namespace thzplan
