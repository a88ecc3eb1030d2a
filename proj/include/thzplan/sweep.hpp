#pragma once

#include "thzplan/absorption.hpp"
#include "thzplan/optimizer.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace thzplan {

enum class SweepVariable {
    beamwidth_deg,
    humidity_pct,
    frequency_hz,
    spectral_efficiency,
    ap_count,
    room_length_m,
};

std::optional<SweepVariable> parse_sweep_variable(const std::string& name);
const char* sweep_variable_name(SweepVariable);

// One or more spectra ordered by humidity; the coefficient is interpolated
// linearly across humidity between the bracketing spectra.
class SpectrumSet {
public:
    void add(AbsorptionSpectrum spectrum);
    std::size_t size() const { return spectra_.size(); }
    const AbsorptionSpectrum& at(std::size_t i) const { return spectra_[i]; }
    double k_at(double frequency_hz, double humidity_percent) const;
    double k_at(double frequency_hz) const; // single-spectrum shortcut
    double min_humidity() const;
    double max_humidity() const;

private:
    std::vector<AbsorptionSpectrum> spectra_;
};

// Every parameter the sweep holds fixed; the swept variable overrides the
// matching field per point.
struct SweepFixed {
    RadioConfig config;
    double frequency_hz;
    double humidity_percent;
    double se_target;
    double room_length_m;
    double reference_distance_m; // throughput evaluation distance
};

struct SweepSpec {
    SweepVariable variable;
    double start;
    double stop;
    int steps; // >= 2 points, start may equal stop
    SweepFixed fixed;
    void validate() const;
};

struct ReportRow {
    double swept_value;
    double frequency_hz;
    double absorption_per_m;
    PlanResult plan;
    double throughput_gbps; // N * B * SE at the reference link distance
    RoomLengthResult room_length;
    RadiusIncreaseResult radius;
    RepeaterResult repeaters;
    double residual; // worst defining-equation residual of the row
    bool feasible;
};

// Deterministic row stream; per-point failures are flagged in-row and never
// abort the sweep.
std::vector<ReportRow> run_sweep(const SweepSpec&, const SpectrumSet&);

void write_sweep_csv(std::ostream&, const SweepSpec&, const std::vector<ReportRow>&);

// AP-count matrix over spectral-efficiency rows and band-plan centers;
// cells without absorption coverage are flagged with -1.
struct ApCountMatrix {
    std::vector<double> se_rows;
    std::vector<double> centers_hz;
    std::vector<std::vector<long>> counts;
};

ApCountMatrix ap_count_matrix(const AbsorptionSpectrum&, const RadioConfig&,
                              double room_length_m, const std::vector<double>& se_rows,
                              const std::vector<double>& centers_hz);

void write_matrix_csv(std::ostream&, const ApCountMatrix&);

} // namespace thzplan
