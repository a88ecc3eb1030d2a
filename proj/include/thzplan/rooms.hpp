#pragma once

#include "thzplan/optimizer.hpp"

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace thzplan {

struct Rectangle {
    double a_m;
    double b_m;
};

struct Trapezoid {
    double a_m;
    double a_prime_m;
    double b_m;
};

struct LineRoom {
    double length_m;
};

// Demand pocket: a rectangular sub-room with its own user count and mobility
// extents. Mobility bounds the minimum pocket size (a >= dx, b >= dy).
struct Pocket {
    double x_m = 0.0; // bounding-box origin in room coordinates
    double y_m = 0.0;
    double a_m = 0.0;
    double b_m = 0.0;
    long users = 1;
    double mobility_x_m = 0.0;
    double mobility_y_m = 0.0;
    int type = 1; // 1..6
};

struct RoomSpec {
    std::variant<Rectangle, Trapezoid, LineRoom> shape;
    std::vector<Pocket> pockets;

    void validate() const;
    bool is_line() const { return std::holds_alternative<LineRoom>(shape); }
    // Trapezoid reduces to ((a + a')/2, b); rectangles pass through. Throws
    // for line rooms.
    Rectangle equivalent_rectangle() const;
    double area_m2() const;
};

// JSON room description; see the README for the schema and an example.
RoomSpec load_room(std::istream&);
RoomSpec load_room_file(const std::string& path);

// Length of the hypothetical linear room equivalent to the floor area at the
// given cell radius: a*b / (2r).
double to_hypothetical_length(const RoomSpec&, double cell_radius_m);

// ceil(a*b / (4 r^2)) access points to blanket the area.
long ap_count_from_area(double a_m, double b_m, double cell_radius_m);

// Homogeneous plan of a whole room. Line rooms use the linear-room closed
// form; rectangles and trapezoids solve the area-consistent cell size (the
// power split and area split cancel in r, leaving exp(k*r) to carry the
// budget). An area plan can be infeasible at any AP count; the flag says so.
PlanResult plan_room(const RoomSpec&, const RadioConfig&, double frequency_hz,
                     double absorption_per_m, double se_target);

enum class PocketPowerPolicy {
    per_user_inverse, // P_i = P_o / J_i
    proportional,     // P_i = P_o * J_i / sum(J)
};

struct PocketPlan {
    Pocket pocket;
    double power_budget_dbm;
    PlanResult plan;
    double hypothetical_length_m; // 2 * r * N of the pocket
    bool feasible;
};

// Plans every pocket as an independent homogeneous sub-room under its power
// share. Infeasible pockets are flagged; the others are still planned.
std::vector<PocketPlan> plan_pockets(const RoomSpec&, const RadioConfig&, double frequency_hz,
                                     double absorption_per_m, double se_target,
                                     PocketPowerPolicy policy = PocketPowerPolicy::per_user_inverse);

enum class PackingScheme { square, hexagonal };

struct PackingResult {
    long cells;
    double covered_fraction;
};

// Inscribed-circle accounting: a square lattice covers pi/4 of the area, a
// hexagonal lattice pi/(2*sqrt(3)); the denser hexagonal lattice needs more
// cells for the same area.
PackingResult packing_efficiency(PackingScheme, double cell_radius_m, double area_m2);

} // namespace thzplan
