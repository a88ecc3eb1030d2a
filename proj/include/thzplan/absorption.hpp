#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace thzplan {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SpectrumSample {
    double frequency_hz;
    double k_per_m;
};

// Maximal contiguous frequency interval usable under a loss cutoff.
struct SubChannel {
    double f_start_hz;
    double f_end_hz;
    double f_center_hz; // (f_start + f_end) / 2
    double bandwidth_hz; // f_end - f_start
};

// Tabulated medium absorption coefficient versus frequency for one
// humidity/temperature condition. Immutable after construction; queries are
// read-only and safe for concurrent use.
class AbsorptionSpectrum {
public:
    // CSV layout: optional '#' comment lines carrying humidity_percent,
    // temperature_c and source directives, then the header
    // "frequency_ghz,k_per_m", then one sample per line.
    static AbsorptionSpectrum load(std::istream& in, double humidity_percent,
                                   double temperature_c, std::string source_label = {});
    static AbsorptionSpectrum load_file(const std::string& path);
    static AbsorptionSpectrum from_samples(std::vector<SpectrumSample> samples,
                                           double humidity_percent, double temperature_c,
                                           std::string source_label = {});

    void save(std::ostream& out) const;
    void save_file(const std::string& path) const;

    // Linear interpolation between the bracketing samples; exact at sample
    // points. Throws std::out_of_range outside the grid.
    double k_at(double frequency_hz) const;

    bool covers(double frequency_hz) const;
    double min_frequency_hz() const { return samples_.front().frequency_hz; }
    double max_frequency_hz() const { return samples_.back().frequency_hz; }
    std::size_t size() const { return samples_.size(); }
    const std::vector<SpectrumSample>& samples() const { return samples_; }
    double humidity_percent() const { return humidity_percent_; }
    double temperature_c() const { return temperature_c_; }
    const std::string& source_label() const { return source_label_; }

private:
    AbsorptionSpectrum() = default;
    std::vector<SpectrumSample> samples_;
    double humidity_percent_ = 0.0;
    double temperature_c_ = 0.0;
    std::string source_label_;
};

// Maximal runs of grid points whose absorption loss at distance d stays at or
// below cutoff_db, keeping intervals at least min_width_hz wide. Results are
// sorted by start frequency and pairwise disjoint.
std::vector<SubChannel> scan_subchannels(const AbsorptionSpectrum&, double distance_m,
                                         double cutoff_db, double min_width_hz = 1e9);

struct ChannelRow {
    SubChannel channel;
    double k_center; // interpolated coefficient at the channel center
};

std::vector<ChannelRow> channel_table(const AbsorptionSpectrum&, double distance_m,
                                      double cutoff_db, double min_width_hz = 1e9);

// Picks the widest channel inside each block_width_hz-wide frequency block,
// ordered by center frequency.
std::vector<ChannelRow> widest_per_block(const std::vector<ChannelRow>&,
                                         double block_width_hz = 1e12);

} // namespace thzplan
