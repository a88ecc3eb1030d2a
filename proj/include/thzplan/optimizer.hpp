#pragma once

#include "thzplan/linkbudget.hpp"

namespace thzplan {

// Relative residual every closed-form answer must satisfy when substituted
// back into its defining equation.
inline constexpr double kResidualTolerance = 1e-9;

// Hypothetical linear room: N access points of radius r = L/(2N) on a line of
// length L, each transmitting P_o/N.
struct PlanProblem {
    double room_length_m;
    double se_target;
    RadioConfig config;
    double frequency_hz;
    double absorption_per_m;
    void validate() const;
};

struct PlanResult {
    long ap_count;          // N
    double cell_radius_m;   // L / (2N)
    double per_ap_power_dbm;
    double achieved_se;     // spectral efficiency at the cell edge
    double k_factor;        // assembled plan constant
    double tau_factor;      // assembled absorption constant
    double residual;        // closed-form substitution residual, relative
    bool feasible;
};

enum class KVariant { k1, k2, k3, k4 };
enum class TauVariant { tau1, tau2, tau3, tau4 };

struct KFactorInputs {
    RadioConfig config;
    double frequency_hz = 0.0;
    double se_target = 0.0;
    double room_length_m = 0.0; // k1, k2
    long ap_count = 0;          // k2, k3, k4
    double cell_radius_m = 0.0; // k4
};

// The four plan constants exactly as their reduced equations define them:
// k1 uses the room length, k2 adds the 1/N power split, k3 drops the length
// term, k4 covers the merged-cell setup (2P_o/N, doubled rate, 2r span).
double k_factor(KVariant, const KFactorInputs&);

// tau1 = k*L/2 (geometry = L), tau2 = k/(2N) (geometry = N), tau3 = k
// (geometry ignored), tau4 = 2*r*k (geometry = r).
double tau_factor(TauVariant, double absorption_per_m, double geometry = 0.0);

// Smallest AP count meeting the target under the shared power budget, from
// the Lambert-W closed form N = ceil(tau1 / W(tau1*K1)) with the integer
// pinned against the rate check so N works and N-1 does not.
PlanResult optimal_ap_count(const PlanProblem&);

struct RoomLengthResult {
    double length_m; // L solving L^2 exp(tau2*L) = K2
    double k2;
    double tau2;
    double residual;
};

// Largest room a fixed AP budget can serve at the target rate.
RoomLengthResult optimal_room_length(long ap_count, const RadioConfig&, double frequency_hz,
                                     double absorption_per_m, double se_target);

struct RadiusIncreaseResult {
    double grown_radius_m; // r' solving r'^2 exp(tau3*r') = K3
    double overlap_m;      // h = r' - r, or 0 when infeasible
    bool feasible;         // r' >= r
    double k3;
    double tau3;
    double residual;
};

// Overlap-packing radius for N fixed cells, reported against the current r.
RadiusIncreaseResult radius_increase(long ap_count, double cell_radius_m, const RadioConfig&,
                                     double frequency_hz, double absorption_per_m,
                                     double se_target);

struct RepeaterResult {
    long count;         // m from the reduced form (1/m) exp(tau4/m) = K4
    long count_shannon; // smallest hop count passing the doubled-rate link check
    double k4;
    double tau4;
    double residual;
};

// Repeater chain merging a cell with its neighbor 2r away: hops of 2r/m at
// power 2P_o/N and doubled target rate. The reduced form and the direct link
// check disagree in general; both counts are reported.
RepeaterResult repeater_count(long ap_count, double cell_radius_m, const RadioConfig&,
                              double frequency_hz, double absorption_per_m, double se_target);

enum class PlanningEquation {
    ap_count,     // (1/x) exp(tau/x) = K
    room_length,  // x^2 exp(tau*x) = K
    grown_radius, // x^2 exp(tau*x) = K
    repeater,     // (1/x) exp(tau/x) = K
};

// Independent bisection root for the canonical planning equations; residual
// at most 1e-12 relative to K. Throws std::runtime_error when no bracket
// with a sign change can be established.
double solve_by_bisection(PlanningEquation, double tau, double constant);

} // namespace thzplan
