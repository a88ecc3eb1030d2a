#include "thzplan/sweep.hpp"

#include "thzplan/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace thzplan {
namespace {

const char* kVariableNames[] = {
    "beamwidth_deg", "humidity_pct", "frequency_hz", "spectral_efficiency", "ap_count",
    "room_length_m",
};

} // namespace

std::optional<SweepVariable> parse_sweep_variable(const std::string& name) {
    for (int i = 0; i < 6; ++i)
        if (name == kVariableNames[i]) return static_cast<SweepVariable>(i);
    return std::nullopt;
}

const char* sweep_variable_name(SweepVariable v) { return kVariableNames[static_cast<int>(v)]; }

void SpectrumSet::add(AbsorptionSpectrum spectrum) {
    spectra_.push_back(std::move(spectrum));
    std::sort(spectra_.begin(), spectra_.end(),
              [](const AbsorptionSpectrum& a, const AbsorptionSpectrum& b) {
                  return a.humidity_percent() < b.humidity_percent();
              });
    for (std::size_t i = 1; i < spectra_.size(); ++i)
        if (spectra_[i].humidity_percent() == spectra_[i - 1].humidity_percent())
            throw std::invalid_argument("SpectrumSet: duplicate humidity");
}

double SpectrumSet::min_humidity() const {
    if (spectra_.empty()) throw std::logic_error("SpectrumSet: empty");
    return spectra_.front().humidity_percent();
}

double SpectrumSet::max_humidity() const {
    if (spectra_.empty()) throw std::logic_error("SpectrumSet: empty");
    return spectra_.back().humidity_percent();
}

double SpectrumSet::k_at(double frequency_hz) const {
    if (spectra_.empty()) throw std::logic_error("SpectrumSet: empty");
    return spectra_.front().k_at(frequency_hz);
}

double SpectrumSet::k_at(double frequency_hz, double humidity_percent) const {
    if (spectra_.empty()) throw std::logic_error("SpectrumSet: empty");
    if (spectra_.size() == 1) {
        if (humidity_percent != spectra_.front().humidity_percent())
            throw std::out_of_range("SpectrumSet: humidity outside the loaded spectra");
        return spectra_.front().k_at(frequency_hz);
    }
    if (humidity_percent < min_humidity() || humidity_percent > max_humidity())
        throw std::out_of_range("SpectrumSet: humidity outside the loaded spectra");
    std::size_t hi = 1;
    while (hi + 1 < spectra_.size() && spectra_[hi].humidity_percent() < humidity_percent) ++hi;
    const auto& a = spectra_[hi - 1];
    const auto& b = spectra_[hi];
    const double t =
        (humidity_percent - a.humidity_percent()) / (b.humidity_percent() - a.humidity_percent());
    return a.k_at(frequency_hz) + t * (b.k_at(frequency_hz) - a.k_at(frequency_hz));
}

void SweepSpec::validate() const {
    if (steps < 2) throw std::invalid_argument("sweep: needs at least 2 steps");
    if (!(start <= stop)) throw std::invalid_argument("sweep: start must not exceed stop");
    if (!std::isfinite(start) || !std::isfinite(stop))
        throw std::invalid_argument("sweep: range must be finite");
    fixed.config.validate();
    if (!(fixed.frequency_hz > 0.0) || !(fixed.se_target > 0.0) || !(fixed.room_length_m > 0.0) ||
        !(fixed.reference_distance_m > 0.0))
        throw std::invalid_argument("sweep: fixed parameters must be positive");
}

namespace {

ReportRow evaluate_point(const SweepSpec& spec, const SpectrumSet& spectra, double value) {
    ReportRow row{};
    row.swept_value = value;
    row.feasible = false;

    RadioConfig cfg = spec.fixed.config;
    double frequency = spec.fixed.frequency_hz;
    double humidity = spec.fixed.humidity_percent;
    double se = spec.fixed.se_target;
    double room_length = spec.fixed.room_length_m;
    long forced_n = 0;

    switch (spec.variable) {
    case SweepVariable::beamwidth_deg: cfg.beamwidth_deg = value; break;
    case SweepVariable::humidity_pct: humidity = value; break;
    case SweepVariable::frequency_hz: frequency = value; break;
    case SweepVariable::spectral_efficiency: se = value; break;
    case SweepVariable::ap_count: forced_n = std::max(1L, std::lround(value)); break;
    case SweepVariable::room_length_m: room_length = value; break;
    }

    row.frequency_hz = frequency;
    try {
        const double k = spectra.size() > 1 || spec.variable == SweepVariable::humidity_pct
                             ? spectra.k_at(frequency, humidity)
                             : spectra.k_at(frequency);
        row.absorption_per_m = k;

        if (forced_n > 0) {
            PlanResult plan{};
            plan.ap_count = forced_n;
            plan.cell_radius_m = room_length / (2.0 * forced_n);
            plan.per_ap_power_dbm =
                cfg.total_power_dbm - linear_to_db(static_cast<double>(forced_n));
            plan.achieved_se = spectral_efficiency(plan.per_ap_power_dbm, cfg,
                                                   {frequency, plan.cell_radius_m, k});
            KFactorInputs kin;
            kin.config = cfg;
            kin.frequency_hz = frequency;
            kin.se_target = se;
            kin.room_length_m = room_length;
            plan.k_factor = k_factor(KVariant::k1, kin);
            plan.tau_factor = tau_factor(TauVariant::tau1, k, room_length);
            plan.residual = 0.0;
            plan.feasible = plan.achieved_se >= se;
            row.plan = plan;
        } else {
            PlanProblem p;
            p.room_length_m = room_length;
            p.se_target = se;
            p.config = cfg;
            p.frequency_hz = frequency;
            p.absorption_per_m = k;
            row.plan = optimal_ap_count(p);
        }

        const double ref_power =
            cfg.total_power_dbm - linear_to_db(static_cast<double>(row.plan.ap_count));
        const double ref_se = spectral_efficiency(
            ref_power, cfg, {frequency, spec.fixed.reference_distance_m, k});
        row.throughput_gbps = row.plan.ap_count * cfg.bandwidth_hz * ref_se / 1e9;

        row.room_length = optimal_room_length(row.plan.ap_count, cfg, frequency, k, se);
        row.radius = radius_increase(row.plan.ap_count, row.plan.cell_radius_m, cfg, frequency, k, se);
        row.repeaters = repeater_count(row.plan.ap_count, row.plan.cell_radius_m, cfg, frequency, k, se);
        row.residual = std::max({row.plan.residual, row.room_length.residual, row.radius.residual,
                                 row.repeaters.residual});
        row.feasible = row.plan.feasible && row.radius.feasible;
    } catch (const std::exception&) {
        row.feasible = false;
        row.residual = std::numeric_limits<double>::quiet_NaN();
    }
    return row;
}

} // namespace

std::vector<ReportRow> run_sweep(const SweepSpec& spec, const SpectrumSet& spectra) {
    spec.validate();
    if (spec.variable == SweepVariable::humidity_pct && spectra.size() < 2)
        throw std::invalid_argument("sweep: humidity sweep needs at least two absorption files");
    std::vector<ReportRow> rows;
    rows.reserve(spec.steps);
    for (int i = 0; i < spec.steps; ++i) {
        const double t = static_cast<double>(i) / (spec.steps - 1);
        const double value = spec.start + t * (spec.stop - spec.start);
        rows.push_back(evaluate_point(spec, spectra, value));
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<ReportRow>& rows) {
    out << "variable,value,frequency_ghz,k_per_m,ap_count,cell_radius_m,per_ap_power_dbm,"
           "achieved_se,k_factor,tau_factor,throughput_gbps,room_length_m,grown_radius_m,"
           "overlap_m,repeaters,repeaters_shannon,residual,feasible\n";
    using report::fmt;
    for (const auto& r : rows) {
        out << sweep_variable_name(spec.variable) << ',' << fmt(r.swept_value) << ','
            << fmt(r.frequency_hz / 1e9) << ',' << fmt(r.absorption_per_m) << ','
            << r.plan.ap_count << ',' << fmt(r.plan.cell_radius_m) << ','
            << fmt(r.plan.per_ap_power_dbm) << ',' << fmt(r.plan.achieved_se) << ','
            << fmt(r.plan.k_factor) << ',' << fmt(r.plan.tau_factor) << ','
            << fmt(r.throughput_gbps) << ',' << fmt(r.room_length.length_m) << ','
            << fmt(r.radius.grown_radius_m) << ',' << fmt(r.radius.overlap_m) << ','
            << r.repeaters.count << ',' << r.repeaters.count_shannon << ',' << fmt(r.residual)
            << ',' << (r.feasible ? 1 : 0) << "\n";
    }
}

ApCountMatrix ap_count_matrix(const AbsorptionSpectrum& spectrum, const RadioConfig& cfg,
                              double room_length_m, const std::vector<double>& se_rows,
                              const std::vector<double>& centers_hz) {
    ApCountMatrix m;
    m.se_rows = se_rows;
    m.centers_hz = centers_hz;
    for (double se : se_rows) {
        std::vector<long> row;
        for (double f : centers_hz) {
            if (!spectrum.covers(f)) {
                row.push_back(-1);
                continue;
            }
            PlanProblem p;
            p.room_length_m = room_length_m;
            p.se_target = se;
            p.config = cfg;
            p.frequency_hz = f;
            p.absorption_per_m = spectrum.k_at(f);
            row.push_back(optimal_ap_count(p).ap_count);
        }
        m.counts.push_back(std::move(row));
    }
    return m;
}

void write_matrix_csv(std::ostream& out, const ApCountMatrix& m) {
    out << "se_bits_per_hz";
    for (double f : m.centers_hz) out << ",f_" << report::fmt(f / 1e12) << "thz";
    out << "\n";
    for (std::size_t i = 0; i < m.se_rows.size(); ++i) {
        out << report::fmt(m.se_rows[i]);
        for (long n : m.counts[i]) {
            if (n < 0)
                out << ",NA";
            else
                out << ',' << n;
        }
        out << "\n";
    }
}

} // namespace thzplan
