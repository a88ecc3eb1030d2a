#include "thzplan/rooms.hpp"

#include "thzplan/absorption.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <stdexcept>

namespace thzplan {
namespace {

using nlohmann::json;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string("room: ") + what + " must be positive");
}

bool overlap(const Pocket& p, const Pocket& q) {
    return p.x_m < q.x_m + q.a_m && q.x_m < p.x_m + p.a_m && p.y_m < q.y_m + q.b_m &&
           q.y_m < p.y_m + p.b_m;
}

// Area plan shared by rectangle rooms and pockets: smallest n such that a
// link of radius sqrt(A/4n) at power P/n meets the target. The 1/n power
// split cancels against the 1/n area split, so feasibility reduces to
// exp(k*r) <= q/A with q the full-budget squared range.
PlanResult plan_area(double area_m2, double power_dbm, const RadioConfig& base,
                     double frequency_hz, double absorption_per_m, double se_target) {
    RadioConfig cfg = base;
    cfg.total_power_dbm = power_dbm;

    auto meets = [&](long n) {
        const double radius = std::sqrt(area_m2 / (4.0 * n));
        const double tx = power_dbm - linear_to_db(static_cast<double>(n));
        return spectral_efficiency(tx, cfg, {frequency_hz, radius, absorption_per_m}) >= se_target;
    };

    KFactorInputs kin;
    kin.config = cfg;
    kin.frequency_hz = frequency_hz;
    kin.se_target = se_target;
    kin.ap_count = 1;
    const double q = k_factor(KVariant::k3, kin); // full-budget squared range

    PlanResult r;
    r.k_factor = q / area_m2;
    r.tau_factor = absorption_per_m;
    r.residual = 0.0;

    long n = 1;
    if (absorption_per_m == 0.0) {
        n = 1; // cell shrink and power split cancel exactly; one cell decides
        r.feasible = meets(1);
    } else if (q <= area_m2) {
        n = 1;
        r.feasible = false; // exp(k r) > 1 >= q/A at every count
    } else {
        const double r_max = std::log(q / area_m2) / absorption_per_m;
        const double n_real = area_m2 / (4.0 * r_max * r_max);
        if (n_real > 1e9) {
            n = 1;
            r.feasible = false;
        } else {
            n = static_cast<long>(std::ceil(n_real));
            if (n < 1) n = 1;
            long guard = 0;
            while (!meets(n) && guard++ < 4) ++n;
            while (n > 1 && meets(n - 1) && guard++ < 8) --n;
            r.feasible = meets(n);
            r.residual = std::abs(std::exp(absorption_per_m * r_max) * area_m2 / q - 1.0);
        }
    }

    r.ap_count = n;
    r.cell_radius_m = std::sqrt(area_m2 / (4.0 * n));
    r.per_ap_power_dbm = power_dbm - linear_to_db(static_cast<double>(n));
    r.achieved_se = spectral_efficiency(r.per_ap_power_dbm, cfg,
                                        {frequency_hz, r.cell_radius_m, absorption_per_m});
    return r;
}

Pocket parse_pocket(const json& j) {
    Pocket p;
    p.x_m = j.at("x_m").get<double>();
    p.y_m = j.at("y_m").get<double>();
    p.a_m = j.at("a_m").get<double>();
    p.b_m = j.at("b_m").get<double>();
    p.users = j.at("users").get<long>();
    p.mobility_x_m = j.value("mobility_x_m", 0.0);
    p.mobility_y_m = j.value("mobility_y_m", 0.0);
    p.type = j.value("type", 1);
    return p;
}

} // namespace

Rectangle RoomSpec::equivalent_rectangle() const {
    if (const auto* r = std::get_if<Rectangle>(&shape)) return *r;
    if (const auto* t = std::get_if<Trapezoid>(&shape))
        return Rectangle{0.5 * (t->a_m + t->a_prime_m), t->b_m};
    throw std::invalid_argument("room: a line room has no rectangular equivalent");
}

double RoomSpec::area_m2() const {
    const Rectangle r = equivalent_rectangle();
    return r.a_m * r.b_m;
}

void RoomSpec::validate() const {
    if (const auto* r = std::get_if<Rectangle>(&shape)) {
        require_positive(r->a_m, "rectangle length");
        require_positive(r->b_m, "rectangle width");
    } else if (const auto* t = std::get_if<Trapezoid>(&shape)) {
        require_positive(t->a_m, "trapezoid length");
        require_positive(t->a_prime_m, "trapezoid second length");
        require_positive(t->b_m, "trapezoid width");
    } else {
        require_positive(std::get<LineRoom>(shape).length_m, "room length");
        if (!pockets.empty())
            throw std::invalid_argument("room: pockets require a rectangle or trapezoid room");
    }
    if (pockets.empty()) return;

    const Rectangle bounds = equivalent_rectangle();
    double pocket_area = 0.0;
    for (std::size_t i = 0; i < pockets.size(); ++i) {
        const Pocket& p = pockets[i];
        require_positive(p.a_m, "pocket length");
        require_positive(p.b_m, "pocket width");
        if (p.users < 1) throw std::invalid_argument("room: pocket needs at least one user");
        if (p.type < 1 || p.type > 6) throw std::invalid_argument("room: pocket type must be 1..6");
        if (!(p.mobility_x_m >= 0.0) || !(p.mobility_y_m >= 0.0))
            throw std::invalid_argument("room: pocket mobility extents must be non-negative");
        if (p.mobility_x_m > p.a_m || p.mobility_y_m > p.b_m)
            throw std::invalid_argument("room: pocket smaller than its mobility extent");
        if (p.x_m < 0.0 || p.y_m < 0.0 || p.x_m + p.a_m > bounds.a_m + 1e-9 ||
            p.y_m + p.b_m > bounds.b_m + 1e-9)
            throw std::invalid_argument("room: pocket outside the room bounds");
        for (std::size_t jx = i + 1; jx < pockets.size(); ++jx)
            if (overlap(p, pockets[jx]))
                throw std::invalid_argument("room: pockets overlap");
        pocket_area += p.a_m * p.b_m;
    }
    if (pocket_area > area_m2() + 1e-9)
        throw std::invalid_argument("room: pocket areas exceed the room area");
}

RoomSpec load_room(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("room json: ") + e.what());
    }
    try {
        RoomSpec room;
        const json& shape = j.at("shape");
        const std::string kind = shape.at("kind").get<std::string>();
        if (kind == "rectangle") {
            room.shape = Rectangle{shape.at("a_m").get<double>(), shape.at("b_m").get<double>()};
        } else if (kind == "trapezoid") {
            room.shape = Trapezoid{shape.at("a_m").get<double>(), shape.at("a_prime_m").get<double>(),
                                   shape.at("b_m").get<double>()};
        } else if (kind == "line") {
            room.shape = LineRoom{shape.at("length_m").get<double>()};
        } else {
            throw ParseError("room json: unknown shape kind '" + kind + "'");
        }
        if (j.contains("pockets"))
            for (const auto& pj : j.at("pockets")) room.pockets.push_back(parse_pocket(pj));
        room.validate();
        return room;
    } catch (const json::exception& e) {
        throw ParseError(std::string("room json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("room json: ") + e.what());
    }
}

RoomSpec load_room_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("room file not found: " + path);
    return load_room(in);
}

double to_hypothetical_length(const RoomSpec& room, double cell_radius_m) {
    require_positive(cell_radius_m, "cell radius");
    const Rectangle r = room.equivalent_rectangle();
    return r.a_m * r.b_m / (2.0 * cell_radius_m);
}

long ap_count_from_area(double a_m, double b_m, double cell_radius_m) {
    require_positive(a_m, "length");
    require_positive(b_m, "width");
    require_positive(cell_radius_m, "cell radius");
    return static_cast<long>(std::ceil(a_m * b_m / (4.0 * cell_radius_m * cell_radius_m)));
}

PlanResult plan_room(const RoomSpec& room, const RadioConfig& cfg, double frequency_hz,
                     double absorption_per_m, double se_target) {
    room.validate();
    if (const auto* line = std::get_if<LineRoom>(&room.shape)) {
        PlanProblem p;
        p.room_length_m = line->length_m;
        p.se_target = se_target;
        p.config = cfg;
        p.frequency_hz = frequency_hz;
        p.absorption_per_m = absorption_per_m;
        return optimal_ap_count(p);
    }
    return plan_area(room.area_m2(), cfg.total_power_dbm, cfg, frequency_hz, absorption_per_m,
                     se_target);
}

std::vector<PocketPlan> plan_pockets(const RoomSpec& room, const RadioConfig& cfg,
                                     double frequency_hz, double absorption_per_m,
                                     double se_target, PocketPowerPolicy policy) {
    room.validate();
    if (room.pockets.empty())
        throw std::invalid_argument("plan_pockets: room has no pockets");

    double total_users = 0.0;
    for (const auto& p : room.pockets) total_users += static_cast<double>(p.users);

    std::vector<PocketPlan> plans;
    plans.reserve(room.pockets.size());
    for (const auto& p : room.pockets) {
        const double share = policy == PocketPowerPolicy::per_user_inverse
                                 ? 1.0 / static_cast<double>(p.users)
                                 : static_cast<double>(p.users) / total_users;
        PocketPlan entry;
        entry.pocket = p;
        entry.power_budget_dbm = cfg.total_power_dbm + linear_to_db(share);
        entry.plan = plan_area(p.a_m * p.b_m, entry.power_budget_dbm, cfg, frequency_hz,
                               absorption_per_m, se_target);
        entry.hypothetical_length_m = 2.0 * entry.plan.cell_radius_m * entry.plan.ap_count;
        entry.feasible = entry.plan.feasible;
        plans.push_back(entry);
    }
    return plans;
}

PackingResult packing_efficiency(PackingScheme scheme, double cell_radius_m, double area_m2) {
    require_positive(cell_radius_m, "cell radius");
    require_positive(area_m2, "area");
    const double r2 = cell_radius_m * cell_radius_m;
    double cell_area;
    double covered;
    if (scheme == PackingScheme::square) {
        cell_area = 4.0 * r2;
        covered = std::numbers::pi / 4.0;
    } else {
        cell_area = 2.0 * std::sqrt(3.0) * r2;
        covered = std::numbers::pi / (2.0 * std::sqrt(3.0));
    }
    return {static_cast<long>(std::ceil(area_m2 / cell_area)), covered};
}

} // namespace thzplan
