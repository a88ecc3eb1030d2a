#include "thzplan/linkbudget.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace thzplan {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }
double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
double mw_to_dbm(double mw) { return linear_to_db(mw); }

void RadioConfig::validate() const {
    if (!(beamwidth_deg > 0.0) || beamwidth_deg > 180.0)
        throw std::invalid_argument("RadioConfig: beamwidth must be in (0, 180] degrees");
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("RadioConfig: bandwidth must be positive");
    if (!(gain_constant > 0.0))
        throw std::invalid_argument("RadioConfig: gain constant must be positive");
    if (!std::isfinite(total_power_dbm) || !std::isfinite(noise_density_db_ghz))
        throw std::invalid_argument("RadioConfig: power and noise density must be finite");
}

void LinkGeometry::validate() const {
    if (!(frequency_hz > 0.0))
        throw std::invalid_argument("LinkGeometry: frequency must be positive");
    if (!(distance_m > 0.0))
        throw std::invalid_argument("LinkGeometry: distance must be positive");
    if (!(absorption_per_m >= 0.0))
        throw std::invalid_argument("LinkGeometry: absorption coefficient must be non-negative");
}

double spreading_loss_db(double frequency_hz, double distance_m) {
    if (!(frequency_hz > 0.0) || !(distance_m > 0.0))
        throw std::invalid_argument("spreading_loss_db: frequency and distance must be positive");
    return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * frequency_hz / kSpeedOfLight);
}

double absorption_loss_db(double absorption_per_m, double distance_m) {
    if (!(absorption_per_m >= 0.0) || !(distance_m > 0.0))
        throw std::invalid_argument("absorption_loss_db: invalid arguments");
    return kDbPerNeper * absorption_per_m * distance_m;
}

double antenna_gain_db(double beamwidth_deg, double gain_constant) {
    if (!(beamwidth_deg > 0.0) || beamwidth_deg > 180.0)
        throw std::invalid_argument("antenna_gain_db: beamwidth must be in (0, 180] degrees");
    if (!(gain_constant > 0.0))
        throw std::invalid_argument("antenna_gain_db: gain constant must be positive");
    const double rad = beamwidth_deg * std::numbers::pi / 180.0;
    return 10.0 * std::log10(gain_constant / (rad * rad));
}

double total_path_loss_db(const LinkGeometry& g) {
    g.validate();
    return spreading_loss_db(g.frequency_hz, g.distance_m) +
           absorption_loss_db(g.absorption_per_m, g.distance_m);
}

double noise_power_dbm(const RadioConfig& cfg) {
    cfg.validate();
    return cfg.noise_density_db_ghz + 10.0 * std::log10(cfg.bandwidth_hz / 1e9);
}

double spectral_efficiency(double tx_power_dbm, const RadioConfig& cfg, const LinkGeometry& g) {
    cfg.validate();
    g.validate();
    const double p_mw = dbm_to_mw(tx_power_dbm);
    const double gain = db_to_linear(antenna_gain_db(cfg.beamwidth_deg, cfg.gain_constant));
    const double noise_mw = dbm_to_mw(noise_power_dbm(cfg));
    const double spread_amp = 4.0 * std::numbers::pi * g.distance_m * g.frequency_hz / kSpeedOfLight;
    const double spread = spread_amp * spread_amp;
    const double absorb = std::exp(g.absorption_per_m * g.distance_m);
    const double snr = p_mw * gain * gain / (noise_mw * spread * absorb);
    return std::log2(1.0 + snr);
}

double required_power_dbm(double se_target, const RadioConfig& cfg, const LinkGeometry& g) {
    if (!(se_target > 0.0))
        throw std::invalid_argument("required_power_dbm: target spectral efficiency must be positive");
    cfg.validate();
    g.validate();
    const double snr_db = linear_to_db(std::exp2(se_target) - 1.0);
    const double gain_db = antenna_gain_db(cfg.beamwidth_deg, cfg.gain_constant);
    return snr_db + noise_power_dbm(cfg) + total_path_loss_db(g) - 2.0 * gain_db;
}

double calibrate_gain_constant(const CalibrationReference& ref, const RadioConfig& cfg) {
    cfg.validate();
    LinkGeometry g{ref.frequency_hz, ref.distance_m, ref.absorption_per_m};
    g.validate();
    if (!(ref.se_target > 0.0))
        throw std::invalid_argument("calibrate_gain_constant: reference spectral efficiency must be positive");
    const double snr_db = linear_to_db(std::exp2(ref.se_target) - 1.0);
    const double gain_total_db =
        snr_db + noise_power_dbm(cfg) + total_path_loss_db(g) - ref.required_power_dbm;
    const double rad = ref.beamwidth_deg * std::numbers::pi / 180.0;
    if (!(ref.beamwidth_deg > 0.0) || ref.beamwidth_deg > 180.0)
        throw std::invalid_argument("calibrate_gain_constant: beamwidth must be in (0, 180] degrees");
    const double gain_constant = rad * rad * db_to_linear(gain_total_db / 2.0);
    if (!std::isfinite(gain_constant) || !(gain_constant > 0.0))
        throw std::runtime_error("calibrate_gain_constant: calibration produced a non-finite constant");
    return gain_constant;
}

} // namespace thzplan
