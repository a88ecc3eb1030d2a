#include "thzplan/absorption.hpp"

#include "thzplan/linkbudget.hpp"
#include "thzplan/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace thzplan {
namespace {

std::string strip(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool parse_number(const std::string& field, double& out) {
    const std::string t = strip(field);
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last && std::isfinite(out);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    std::ostringstream os;
    os << "absorption csv line " << line << ": " << what;
    throw ParseError(os.str());
}

struct Directives {
    double humidity = -1.0;
    double temperature = std::numeric_limits<double>::quiet_NaN();
    std::string source;
};

bool read_directive(const std::string& comment, Directives& d) {
    // comment text without the leading '#'
    const auto colon = comment.find(':');
    if (colon == std::string::npos) return false;
    const std::string key = strip(comment.substr(0, colon));
    const std::string value = strip(comment.substr(colon + 1));
    if (key == "humidity_percent") return parse_number(value, d.humidity);
    if (key == "temperature_c") return parse_number(value, d.temperature);
    if (key == "source") {
        d.source = value;
        return true;
    }
    return false;
}

std::vector<SpectrumSample> parse_rows(std::istream& in, Directives& dir) {
    std::vector<SpectrumSample> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = strip(line);
        if (t.empty()) continue;
        if (t.front() == '#') {
            read_directive(t.substr(1), dir);
            continue;
        }
        if (!header_seen) {
            if (t != "frequency_ghz,k_per_m")
                fail(line_no, "expected header 'frequency_ghz,k_per_m'");
            header_seen = true;
            continue;
        }
        const auto comma = t.find(',');
        if (comma == std::string::npos) fail(line_no, "malformed row, expected two fields");
        double f_ghz = 0.0;
        double k = 0.0;
        if (!parse_number(t.substr(0, comma), f_ghz) || !parse_number(t.substr(comma + 1), k))
            fail(line_no, "malformed row, fields must be finite numbers");
        if (!(f_ghz > 0.0)) fail(line_no, "frequency must be positive");
        if (k < 0.0) fail(line_no, "negative absorption coefficient");
        const double f_hz = f_ghz * 1e9;
        if (!rows.empty() && !(f_hz > rows.back().frequency_hz))
            fail(line_no, "non-monotone grid");
        rows.push_back({f_hz, k});
    }
    if (!header_seen) throw ParseError("absorption csv: missing header 'frequency_ghz,k_per_m'");
    return rows;
}

} // namespace

AbsorptionSpectrum AbsorptionSpectrum::from_samples(std::vector<SpectrumSample> samples,
                                                    double humidity_percent, double temperature_c,
                                                    std::string source_label) {
    if (samples.size() < 2)
        throw ParseError("absorption spectrum needs at least 2 samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].frequency_hz > 0.0) || !std::isfinite(samples[i].frequency_hz))
            throw ParseError("absorption spectrum: frequencies must be positive");
        if (!(samples[i].k_per_m >= 0.0) || !std::isfinite(samples[i].k_per_m))
            throw ParseError("absorption spectrum: coefficients must be non-negative");
        if (i > 0 && !(samples[i].frequency_hz > samples[i - 1].frequency_hz))
            throw ParseError("absorption spectrum: non-monotone grid");
    }
    if (!(humidity_percent >= 0.0) || humidity_percent > 100.0)
        throw ParseError("absorption spectrum: humidity must be in [0, 100] percent");
    AbsorptionSpectrum s;
    s.samples_ = std::move(samples);
    s.humidity_percent_ = humidity_percent;
    s.temperature_c_ = temperature_c;
    s.source_label_ = std::move(source_label);
    return s;
}

AbsorptionSpectrum AbsorptionSpectrum::load(std::istream& in, double humidity_percent,
                                            double temperature_c, std::string source_label) {
    Directives dir;
    auto rows = parse_rows(in, dir);
    if (source_label.empty()) source_label = dir.source;
    return from_samples(std::move(rows), humidity_percent, temperature_c, std::move(source_label));
}

AbsorptionSpectrum AbsorptionSpectrum::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("absorption data not found: " + path);
    Directives dir;
    auto rows = parse_rows(in, dir);
    const double humidity = dir.humidity >= 0.0 ? dir.humidity : 60.0;
    const double temperature = std::isfinite(dir.temperature) ? dir.temperature : 25.0;
    return from_samples(std::move(rows), humidity, temperature, dir.source);
}

void AbsorptionSpectrum::save(std::ostream& out) const {
    out << "# humidity_percent: " << report::shortest(humidity_percent_) << "\n";
    out << "# temperature_c: " << report::shortest(temperature_c_) << "\n";
    if (!source_label_.empty()) out << "# source: " << source_label_ << "\n";
    out << "frequency_ghz,k_per_m\n";
    for (const auto& s : samples_) {
        out << report::shortest(s.frequency_hz / 1e9) << ',' << report::shortest(s.k_per_m)
            << "\n";
    }
}

void AbsorptionSpectrum::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write absorption file: " + path);
    save(out);
}

bool AbsorptionSpectrum::covers(double frequency_hz) const {
    return frequency_hz >= min_frequency_hz() && frequency_hz <= max_frequency_hz();
}

double AbsorptionSpectrum::k_at(double frequency_hz) const {
    if (!covers(frequency_hz))
        throw std::out_of_range("absorption query outside the tabulated band");
    auto it = std::lower_bound(samples_.begin(), samples_.end(), frequency_hz,
                               [](const SpectrumSample& s, double f) { return s.frequency_hz < f; });
    if (it != samples_.end() && it->frequency_hz == frequency_hz) return it->k_per_m;
    const auto hi = it;
    const auto lo = it - 1;
    const double t = (frequency_hz - lo->frequency_hz) / (hi->frequency_hz - lo->frequency_hz);
    return lo->k_per_m + t * (hi->k_per_m - lo->k_per_m);
}

std::vector<SubChannel> scan_subchannels(const AbsorptionSpectrum& s, double distance_m,
                                         double cutoff_db, double min_width_hz) {
    if (!(distance_m > 0.0)) throw std::invalid_argument("scan_subchannels: distance must be positive");
    if (!(cutoff_db >= 0.0)) throw std::invalid_argument("scan_subchannels: cutoff must be non-negative");
    if (!(min_width_hz >= 0.0)) throw std::invalid_argument("scan_subchannels: minimum width must be non-negative");

    std::vector<SubChannel> out;
    const auto& rows = s.samples();
    std::size_t run_start = 0;
    bool in_run = false;
    auto flush = [&](std::size_t run_end) {
        const double f0 = rows[run_start].frequency_hz;
        const double f1 = rows[run_end].frequency_hz;
        const double width = f1 - f0;
        if (width > 0.0 && width >= min_width_hz)
            out.push_back({f0, f1, 0.5 * (f0 + f1), width});
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const bool usable = absorption_loss_db(rows[i].k_per_m, distance_m) <= cutoff_db;
        if (usable && !in_run) {
            run_start = i;
            in_run = true;
        } else if (!usable && in_run) {
            flush(i - 1);
            in_run = false;
        }
    }
    if (in_run) flush(rows.size() - 1);
    return out;
}

std::vector<ChannelRow> channel_table(const AbsorptionSpectrum& s, double distance_m,
                                      double cutoff_db, double min_width_hz) {
    std::vector<ChannelRow> rows;
    for (const auto& c : scan_subchannels(s, distance_m, cutoff_db, min_width_hz))
        rows.push_back({c, s.k_at(c.f_center_hz)});
    return rows;
}

std::vector<ChannelRow> widest_per_block(const std::vector<ChannelRow>& rows,
                                         double block_width_hz) {
    if (!(block_width_hz > 0.0))
        throw std::invalid_argument("widest_per_block: block width must be positive");
    std::vector<ChannelRow> best;
    for (const auto& row : rows) {
        const long block = static_cast<long>(std::floor(row.channel.f_center_hz / block_width_hz));
        bool placed = false;
        for (auto& b : best) {
            const long bb = static_cast<long>(std::floor(b.channel.f_center_hz / block_width_hz));
            if (bb == block) {
                if (row.channel.bandwidth_hz > b.channel.bandwidth_hz) b = row;
                placed = true;
                break;
            }
        }
        if (!placed) best.push_back(row);
    }
    std::sort(best.begin(), best.end(), [](const ChannelRow& a, const ChannelRow& b) {
        return a.channel.f_center_hz < b.channel.f_center_hz;
    });
    return best;
}

} // namespace thzplan
