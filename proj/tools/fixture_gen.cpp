// Regenerates the bundled synthetic absorption fixtures under data/.
//
// Two profile families share the ten-band plan:
//  - spectrum_bands_rh60.csv: smooth band-center attenuation anchors on a
//    10 GHz grid, for link-budget and AP-count work.
//  - spectrum_windows_rh60.csv / spectrum_windows_rh80.csv: fine transmission
//    window structure on a 1 GHz grid, for sub-channel scanning.
#include "thzplan/absorption.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

using namespace thzplan;

namespace {

constexpr double kCentersGhz[10] = {320, 1510, 2520, 3420, 4910, 5720, 6570, 7190, 8830, 9570};

// Band-center attenuation anchors at 60% relative humidity.
constexpr double kAnchors[10] = {
    0.014999999999999999, 0.19153738558845929, 0.63001996029239615, 0.74825718418050191,
    1.3537860511851958,   1.6975025650994378,  2.1942444595574853,  2.401326509683082,
    3.5349059016307729,   4.1032288175440215,
};

// Transmission-window widths (GHz) and in-window attenuation floors.
constexpr double kWidthsGhz[10] = {446, 168, 82, 136, 112, 126, 120, 246, 216, 230};
constexpr double kFloors[10] = {0.001, 0.004, 0.010, 0.020, 0.035,
                                0.050, 0.060, 0.080, 0.100, 0.120};

// Window edge value; just under the 3 dB / 5 m usability threshold of
// 3 / (10 log10(e) * 5) = 0.138155 1/m.
constexpr double kEdgeK = 0.138;
constexpr double kWallBaseK = 0.145;

double bands_k(double f_ghz) {
    if (f_ghz <= kCentersGhz[0]) return kAnchors[0];
    int seg = 0;
    while (seg < 8 && f_ghz > kCentersGhz[seg + 1]) ++seg;
    const double f0 = kCentersGhz[seg];
    const double f1 = kCentersGhz[seg + 1];
    const double t = std::log(f_ghz / f0) / std::log(f1 / f0);
    return kAnchors[seg] * std::exp(t * std::log(kAnchors[seg + 1] / kAnchors[seg]));
}

double windows_k(double f_ghz) {
    for (int i = 0; i < 10; ++i) {
        const double half = kWidthsGhz[i] / 2.0;
        const double u = (f_ghz - kCentersGhz[i]) / half;
        if (u >= -1.0 && u <= 1.0) {
            const double u4 = u * u * u * u;
            return kFloors[i] + (kEdgeK - kFloors[i]) * u4;
        }
    }
    // absorption wall between windows: a smooth line-like bump
    double lo = 50.0;
    double hi = 10000.0;
    for (int i = 0; i < 10; ++i) {
        const double start = kCentersGhz[i] - kWidthsGhz[i] / 2.0;
        const double end = kCentersGhz[i] + kWidthsGhz[i] / 2.0;
        if (f_ghz < start) {
            hi = start;
            break;
        }
        lo = end;
    }
    const double t = (f_ghz - lo) / (hi - lo);
    const double peak = 2.0 + (lo + hi) / 2000.0;
    const double s = std::sin(std::numbers::pi * t);
    return kWallBaseK + peak * s * s;
}

AbsorptionSpectrum make_bands() {
    std::vector<SpectrumSample> rows;
    for (double f = 100.0; f <= 10000.0 + 1e-9; f += 10.0)
        rows.push_back({f * 1e9, bands_k(f)});
    return AbsorptionSpectrum::from_samples(std::move(rows), 60.0, 25.0,
                                            "synthetic band-center attenuation profile");
}

AbsorptionSpectrum make_windows(double humidity) {
    // the higher-humidity profile scales the 60% curve up
    const double scale = humidity == 60.0 ? 1.0 : 1.6;
    const double offset = humidity == 60.0 ? 0.0 : 0.01;
    std::vector<SpectrumSample> rows;
    for (double f = 50.0; f <= 10000.0 + 1e-9; f += 1.0)
        rows.push_back({f * 1e9, scale * windows_k(f) + offset});
    return AbsorptionSpectrum::from_samples(std::move(rows), humidity, 25.0,
                                            "synthetic transmission-window profile");
}

} // namespace

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "data";
    make_bands().save_file(dir + "/spectrum_bands_rh60.csv");
    make_windows(60.0).save_file(dir + "/spectrum_windows_rh60.csv");
    make_windows(80.0).save_file(dir + "/spectrum_windows_rh80.csv");
    std::printf("wrote 3 fixtures to %s\n", dir.c_str());
    return 0;
}
