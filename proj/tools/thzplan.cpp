// thzplan: indoor THz access-point planning from absorption data and a room
// description. See README.md for the data formats.
#include "thzplan/absorption.hpp"
#include "thzplan/defaults.hpp"
#include "thzplan/linkbudget.hpp"
#include "thzplan/optimizer.hpp"
#include "thzplan/report.hpp"
#include "thzplan/rooms.hpp"
#include "thzplan/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;
using namespace thzplan;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInputError = 2;

enum class Format { text, csv, json_fmt };

struct GlobalOptions {
    std::vector<std::string> absorption_files;
    std::string room_file;
    std::string out_file;
    bool as_json = false;
    bool as_csv = false;

    double power_dbm = defaults::kTotalPowerDbm;
    double noise_db_ghz = defaults::kNoiseDensityDbGhz;
    double bandwidth_ghz = defaults::kBandwidthHz / 1e9;
    double se = defaults::kSpectralEfficiency;
    double data_rate_gbps = 0.0; // when set, se = rate / bandwidth
    double beamwidth_deg = defaults::kBeamwidthDeg;
    double gain_constant = defaults::kGainConstant;
    double room_length_m = defaults::kRoomLengthM;
    double frequency_thz = defaults::kBandPlanHz[0] / 1e12;
    double humidity_pct = defaults::kHumidityPercent;
    double temperature_c = defaults::kTemperatureC;
    double distance_m = defaults::kReferenceDistanceM;

    Format format() const {
        if (as_json) return Format::json_fmt;
        if (as_csv) return Format::csv;
        return Format::text;
    }
    RadioConfig config() const {
        RadioConfig cfg;
        cfg.total_power_dbm = power_dbm;
        cfg.noise_density_db_ghz = noise_db_ghz;
        cfg.bandwidth_hz = bandwidth_ghz * 1e9;
        cfg.beamwidth_deg = beamwidth_deg;
        cfg.gain_constant = gain_constant;
        return cfg;
    }
    double se_target() const {
        if (data_rate_gbps > 0.0) return data_rate_gbps / bandwidth_ghz;
        return se;
    }
};

struct OutputSink {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file.open(path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot write output file: " + path);
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

SpectrumSet load_spectra(const GlobalOptions& opt) {
    if (opt.absorption_files.empty())
        throw ParseError("absorption data not found (pass --absorption <file>)");
    SpectrumSet set;
    for (const auto& path : opt.absorption_files) {
        if (!std::filesystem::exists(path))
            throw ParseError("absorption data not found: " + path);
        set.add(AbsorptionSpectrum::load_file(path));
    }
    return set;
}

// key/value blocks shared by the single-result commands
struct Field {
    std::string key;
    std::string value;
    bool numeric;
};

void emit_fields(std::ostream& out, Format fmt, const std::vector<std::vector<Field>>& rows) {
    if (fmt == Format::json_fmt) {
        json arr = json::array();
        for (const auto& row : rows) {
            json obj;
            for (const auto& f : row)
                if (f.numeric)
                    obj[f.key] = report::rounded(std::strtod(f.value.c_str(), nullptr));
                else
                    obj[f.key] = f.value;
            arr.push_back(obj);
        }
        out << (rows.size() == 1 ? arr[0].dump(2) : arr.dump(2)) << "\n";
        return;
    }
    if (fmt == Format::csv) {
        for (std::size_t i = 0; i < rows[0].size(); ++i)
            out << rows[0][i].key << (i + 1 < rows[0].size() ? "," : "\n");
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << row[i].value << (i + 1 < row.size() ? "," : "\n");
        }
        return;
    }
    for (const auto& row : rows) {
        for (const auto& f : row) out << f.key << ": " << f.value << "\n";
        if (rows.size() > 1 && &row != &rows.back()) out << "\n";
    }
}

Field num(const std::string& key, double v) { return {key, report::fmt(v), true}; }
Field intf(const std::string& key, long v) { return {key, std::to_string(v), true}; }

std::vector<Field> plan_fields(const PlanResult& plan, double length_m, double frequency_hz,
                               double k) {
    return {
        intf("ap_count", plan.ap_count),
        num("cell_radius_m", plan.cell_radius_m),
        num("per_ap_power_dbm", plan.per_ap_power_dbm),
        num("achieved_se", plan.achieved_se),
        num("k_factor", plan.k_factor),
        num("tau_factor", plan.tau_factor),
        num("room_length_m", length_m),
        num("frequency_ghz", frequency_hz / 1e9),
        num("k_per_m", k),
        num("residual", plan.residual),
        intf("feasible", plan.feasible ? 1 : 0),
    };
}

int cmd_plan(const GlobalOptions& opt, long force_n) {
    const SpectrumSet spectra = load_spectra(opt);
    const double frequency = opt.frequency_thz * 1e12;
    const double k = spectra.k_at(frequency);
    const RadioConfig cfg = opt.config();
    OutputSink sink(opt.out_file);

    std::vector<std::vector<Field>> rows;
    bool all_feasible = true;

    std::optional<RoomSpec> room;
    if (!opt.room_file.empty()) room = load_room_file(opt.room_file);

    PlanResult plan;
    double length = opt.room_length_m;
    if (force_n > 0) {
        plan.ap_count = force_n;
        if (room && !room->is_line()) {
            const double area = room->area_m2();
            plan.cell_radius_m = std::sqrt(area / (4.0 * force_n));
            length = 2.0 * plan.cell_radius_m * force_n;
        } else {
            if (room) length = std::get<LineRoom>(room->shape).length_m;
            plan.cell_radius_m = length / (2.0 * force_n);
        }
        plan.per_ap_power_dbm = cfg.total_power_dbm - linear_to_db(static_cast<double>(force_n));
        plan.achieved_se =
            spectral_efficiency(plan.per_ap_power_dbm, cfg, {frequency, plan.cell_radius_m, k});
        KFactorInputs kin;
        kin.config = cfg;
        kin.frequency_hz = frequency;
        kin.se_target = opt.se_target();
        kin.room_length_m = length;
        plan.k_factor = k_factor(KVariant::k1, kin);
        plan.tau_factor = tau_factor(TauVariant::tau1, k, length);
        plan.residual = 0.0;
        plan.feasible = plan.achieved_se >= opt.se_target();
    } else if (room) {
        plan = plan_room(*room, cfg, frequency, k, opt.se_target());
        length = room->is_line() ? std::get<LineRoom>(room->shape).length_m
                                 : 2.0 * plan.cell_radius_m * plan.ap_count;
    } else {
        PlanProblem p;
        p.room_length_m = length;
        p.se_target = opt.se_target();
        p.config = cfg;
        p.frequency_hz = frequency;
        p.absorption_per_m = k;
        plan = optimal_ap_count(p);
    }
    all_feasible = plan.feasible;
    rows.push_back(plan_fields(plan, length, frequency, k));

    if (room && !room->pockets.empty()) {
        // keep one column schema across the room row and the pocket rows
        long total_users = 0;
        for (const auto& p : room->pockets) total_users += p.users;
        rows[0].insert(rows[0].begin(), intf("pocket", 0));
        rows[0].push_back(num("pocket_power_dbm", cfg.total_power_dbm));
        rows[0].push_back(intf("users", total_users));

        const auto pocket_plans = plan_pockets(*room, cfg, frequency, k, opt.se_target());
        for (std::size_t i = 0; i < pocket_plans.size(); ++i) {
            const auto& pp = pocket_plans[i];
            auto fields = plan_fields(pp.plan, pp.hypothetical_length_m, frequency, k);
            fields.insert(fields.begin(), intf("pocket", static_cast<long>(i + 1)));
            fields.push_back(num("pocket_power_dbm", pp.power_budget_dbm));
            fields.push_back(intf("users", pp.pocket.users));
            rows.push_back(std::move(fields));
            all_feasible = all_feasible && pp.feasible;
        }
    }

    emit_fields(sink.stream(), opt.format(), rows);
    return all_feasible ? kExitOk : kExitInfeasible;
}

int cmd_subchannels(const GlobalOptions& opt, double cutoff_db, double min_width_ghz) {
    const SpectrumSet spectra = load_spectra(opt);
    const auto channels =
        scan_subchannels(spectra.at(0), opt.distance_m, cutoff_db, min_width_ghz * 1e9);
    OutputSink sink(opt.out_file);
    if (opt.format() == Format::json_fmt) {
        json arr = json::array();
        for (const auto& c : channels) {
            json obj;
            obj["f_start_ghz"] = report::rounded(c.f_start_hz / 1e9);
            obj["f_end_ghz"] = report::rounded(c.f_end_hz / 1e9);
            obj["f_center_ghz"] = report::rounded(c.f_center_hz / 1e9);
            obj["bandwidth_ghz"] = report::rounded(c.bandwidth_hz / 1e9);
            arr.push_back(obj);
        }
        sink.stream() << arr.dump(2) << "\n";
        return kExitOk;
    }
    sink.stream() << "f_start_ghz,f_end_ghz,f_center_ghz,bandwidth_ghz\n";
    for (const auto& c : channels) {
        sink.stream() << report::fmt(c.f_start_hz / 1e9) << ',' << report::fmt(c.f_end_hz / 1e9)
                      << ',' << report::fmt(c.f_center_hz / 1e9) << ','
                      << report::fmt(c.bandwidth_hz / 1e9) << "\n";
    }
    return kExitOk;
}

int cmd_sweep(const GlobalOptions& opt, const std::string& variable, double start, double stop,
              int steps) {
    const auto var = parse_sweep_variable(variable);
    if (!var) throw ParseError("unknown sweep variable: " + variable);
    const SpectrumSet spectra = load_spectra(opt);

    SweepSpec spec;
    spec.variable = *var;
    spec.start = start;
    spec.stop = stop;
    spec.steps = steps;
    spec.fixed.config = opt.config();
    spec.fixed.frequency_hz = opt.frequency_thz * 1e12;
    spec.fixed.humidity_percent = opt.humidity_pct;
    spec.fixed.se_target = opt.se_target();
    spec.fixed.room_length_m = opt.room_length_m;
    spec.fixed.reference_distance_m = opt.distance_m;

    const auto rows = run_sweep(spec, spectra);
    OutputSink sink(opt.out_file);
    if (opt.format() == Format::json_fmt) {
        json arr = json::array();
        for (const auto& r : rows) {
            json obj;
            obj["variable"] = sweep_variable_name(spec.variable);
            obj["value"] = report::rounded(r.swept_value);
            obj["frequency_ghz"] = report::rounded(r.frequency_hz / 1e9);
            obj["k_per_m"] = report::rounded(r.absorption_per_m);
            obj["ap_count"] = r.plan.ap_count;
            obj["cell_radius_m"] = report::rounded(r.plan.cell_radius_m);
            obj["per_ap_power_dbm"] = report::rounded(r.plan.per_ap_power_dbm);
            obj["achieved_se"] = report::rounded(r.plan.achieved_se);
            obj["k_factor"] = report::rounded(r.plan.k_factor);
            obj["tau_factor"] = report::rounded(r.plan.tau_factor);
            obj["throughput_gbps"] = report::rounded(r.throughput_gbps);
            obj["room_length_m"] = report::rounded(r.room_length.length_m);
            obj["grown_radius_m"] = report::rounded(r.radius.grown_radius_m);
            obj["overlap_m"] = report::rounded(r.radius.overlap_m);
            obj["repeaters"] = r.repeaters.count;
            obj["repeaters_shannon"] = r.repeaters.count_shannon;
            obj["residual"] = report::rounded(r.residual);
            obj["feasible"] = r.feasible;
            arr.push_back(obj);
        }
        sink.stream() << arr.dump(2) << "\n";
    } else {
        write_sweep_csv(sink.stream(), spec, rows);
    }
    for (const auto& r : rows)
        if (!r.feasible) return kExitInfeasible;
    return kExitOk;
}

int cmd_table3(const GlobalOptions& opt, std::vector<double> centers_thz) {
    const SpectrumSet spectra = load_spectra(opt);
    if (centers_thz.empty())
        for (double f : defaults::kBandPlanHz) centers_thz.push_back(f / 1e12);
    std::vector<double> centers_hz;
    for (double f : centers_thz) centers_hz.push_back(f * 1e12);
    const std::vector<double> se_rows(defaults::kMatrixSeRows.begin(),
                                      defaults::kMatrixSeRows.end());
    const auto matrix =
        ap_count_matrix(spectra.at(0), opt.config(), opt.room_length_m, se_rows, centers_hz);
    OutputSink sink(opt.out_file);
    if (opt.format() == Format::json_fmt) {
        json obj;
        obj["se_rows"] = matrix.se_rows;
        json centers = json::array();
        for (double f : matrix.centers_hz) centers.push_back(report::rounded(f / 1e12));
        obj["centers_thz"] = centers;
        obj["counts"] = matrix.counts;
        sink.stream() << obj.dump(2) << "\n";
    } else {
        write_matrix_csv(sink.stream(), matrix);
    }
    for (const auto& row : matrix.counts)
        for (long n : row)
            if (n < 0) return kExitInfeasible;
    return kExitOk;
}

int cmd_radius_increase(const GlobalOptions& opt, long ap_count, double radius_m) {
    const SpectrumSet spectra = load_spectra(opt);
    const double frequency = opt.frequency_thz * 1e12;
    const double k = spectra.k_at(frequency);
    const RadioConfig cfg = opt.config();

    if (ap_count <= 0) {
        PlanProblem p{opt.room_length_m, opt.se_target(), cfg, frequency, k};
        const PlanResult plan = optimal_ap_count(p);
        ap_count = plan.ap_count;
        if (radius_m <= 0.0) radius_m = plan.cell_radius_m;
    }
    if (radius_m <= 0.0) radius_m = opt.room_length_m / (2.0 * ap_count);

    const auto r = radius_increase(ap_count, radius_m, cfg, frequency, k, opt.se_target());
    OutputSink sink(opt.out_file);
    emit_fields(sink.stream(), opt.format(),
                {{
                    intf("ap_count", ap_count),
                    num("cell_radius_m", radius_m),
                    num("grown_radius_m", r.grown_radius_m),
                    num("overlap_m", r.overlap_m),
                    num("k_factor", r.k3),
                    num("tau_factor", r.tau3),
                    num("residual", r.residual),
                    intf("feasible", r.feasible ? 1 : 0),
                }});
    return r.feasible ? kExitOk : kExitInfeasible;
}

int cmd_repeaters(const GlobalOptions& opt, long ap_count, double radius_m) {
    const SpectrumSet spectra = load_spectra(opt);
    const double frequency = opt.frequency_thz * 1e12;
    const double k = spectra.k_at(frequency);
    const RadioConfig cfg = opt.config();

    if (ap_count <= 0) {
        PlanProblem p{opt.room_length_m, opt.se_target(), cfg, frequency, k};
        const PlanResult plan = optimal_ap_count(p);
        ap_count = plan.ap_count;
        if (radius_m <= 0.0) radius_m = plan.cell_radius_m;
    }
    if (radius_m <= 0.0) radius_m = opt.room_length_m / (2.0 * ap_count);

    const auto r = repeater_count(ap_count, radius_m, cfg, frequency, k, opt.se_target());
    OutputSink sink(opt.out_file);
    emit_fields(sink.stream(), opt.format(),
                {{
                    intf("ap_count", ap_count),
                    num("cell_radius_m", radius_m),
                    intf("repeaters", r.count),
                    intf("repeaters_shannon", r.count_shannon),
                    num("k_factor", r.k4),
                    num("tau_factor", r.tau4),
                    num("residual", r.residual),
                }});
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Indoor THz access-point planning toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions opt;
    app.add_option("--absorption", opt.absorption_files, "Absorption CSV file(s)")
        ->envname("THZPLAN_ABSORPTION");
    app.add_option("--room", opt.room_file, "Room description JSON")->envname("THZPLAN_ROOM");
    app.add_option("--out", opt.out_file, "Write the report to a file instead of stdout");
    auto* jf = app.add_flag("--json", opt.as_json, "Emit JSON");
    app.add_flag("--csv", opt.as_csv, "Emit CSV")->excludes(jf);

    app.add_option("--power-dbm", opt.power_dbm, "Room power budget, dBm")
        ->envname("THZPLAN_POWER_DBM");
    app.add_option("--noise-db-ghz", opt.noise_db_ghz, "Noise spectral density, dBm/GHz")
        ->envname("THZPLAN_NOISE_DB_GHZ");
    app.add_option("--bandwidth-ghz", opt.bandwidth_ghz, "Usable bandwidth per link, GHz")
        ->envname("THZPLAN_BANDWIDTH_GHZ");
    app.add_option("--se", opt.se, "Target spectral efficiency, bits/s/Hz")
        ->envname("THZPLAN_SPECTRAL_EFFICIENCY");
    app.add_option("--data-rate-gbps", opt.data_rate_gbps,
                   "Target data rate; overrides --se as rate/bandwidth")
        ->envname("THZPLAN_DATA_RATE_GBPS");
    app.add_option("--beamwidth-deg", opt.beamwidth_deg, "Antenna beamwidth, degrees")
        ->envname("THZPLAN_BEAMWIDTH_DEG");
    app.add_option("--gain-constant", opt.gain_constant, "Antenna gain model constant")
        ->envname("THZPLAN_GAIN_CONSTANT");
    app.add_option("--room-length-m", opt.room_length_m, "Hypothetical room length, m")
        ->envname("THZPLAN_ROOM_LENGTH_M");
    app.add_option("--frequency-thz", opt.frequency_thz, "Carrier frequency, THz")
        ->envname("THZPLAN_FREQUENCY_THZ");
    app.add_option("--humidity-pct", opt.humidity_pct, "Relative humidity, percent")
        ->envname("THZPLAN_HUMIDITY_PCT");
    app.add_option("--temperature-c", opt.temperature_c, "Room temperature, Celsius")
        ->envname("THZPLAN_TEMPERATURE_C");
    app.add_option("--distance-m", opt.distance_m, "Reference link distance, m")
        ->envname("THZPLAN_DISTANCE_M");

    long force_n = 0;
    auto* plan = app.add_subcommand("plan", "Optimal AP count and cell radius");
    plan->add_option("--force-n", force_n, "Report the plan for a fixed AP count");

    double cutoff_db = defaults::kLossCutoffDb;
    double min_width_ghz = defaults::kMinChannelWidthHz / 1e9;
    auto* sub = app.add_subcommand("subchannels", "Usable sub-channels under a loss cutoff");
    sub->add_option("--cutoff-db", cutoff_db, "Absorption loss cutoff, dB");
    sub->add_option("--min-width-ghz", min_width_ghz, "Minimum channel width, GHz");

    std::string variable;
    double start = 0.0, stop = 0.0;
    int steps = 2;
    auto* sweep = app.add_subcommand("sweep", "Parameter sweep report");
    sweep->add_option("--variable", variable,
                      "One of beamwidth_deg, humidity_pct, frequency_hz, spectral_efficiency, "
                      "ap_count, room_length_m")
        ->required();
    sweep->add_option("--start", start, "Sweep start")->required();
    sweep->add_option("--stop", stop, "Sweep stop")->required();
    sweep->add_option("--steps", steps, "Number of sweep points")->required();

    std::vector<double> centers_thz;
    auto* table3 = app.add_subcommand("table3", "AP-count matrix over the band plan");
    table3->add_option("--centers-thz", centers_thz, "Band centers, THz");

    long ri_n = 0;
    double ri_r = 0.0;
    auto* rinc = app.add_subcommand("radius-increase", "Cell radius growth for overlap packing");
    rinc->add_option("--ap-count", ri_n, "Fixed AP count (default: from the plan)");
    rinc->add_option("--radius-m", ri_r, "Current cell radius (default: L/2N)");

    long rep_n = 0;
    double rep_r = 0.0;
    auto* reps = app.add_subcommand("repeaters", "Repeater count for merging adjacent cells");
    reps->add_option("--ap-count", rep_n, "Fixed AP count (default: from the plan)");
    reps->add_option("--radius-m", rep_r, "Current cell radius (default: L/2N)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (plan->parsed()) return cmd_plan(opt, force_n);
        if (sub->parsed()) return cmd_subchannels(opt, cutoff_db, min_width_ghz);
        if (sweep->parsed()) return cmd_sweep(opt, variable, start, stop, steps);
        if (table3->parsed()) return cmd_table3(opt, centers_thz);
        if (rinc->parsed()) return cmd_radius_increase(opt, ri_n, ri_r);
        if (reps->parsed()) return cmd_repeaters(opt, rep_n, rep_r);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
