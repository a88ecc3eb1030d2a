#include "thzplan/optimizer.hpp"

#include "thzplan/lambert.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace thzplan {
namespace {

// Shared building block of every plan constant: the squared range
// 4*P*Gt*Gr*c^2 / (N_P*(2^S - 1)*(4*pi*f)^2) a full-budget link affords.
double range_constant_m2(const RadioConfig& cfg, double frequency_hz, double se_target) {
    const double p_mw = dbm_to_mw(cfg.total_power_dbm);
    const double gain = db_to_linear(antenna_gain_db(cfg.beamwidth_deg, cfg.gain_constant));
    const double noise_mw = dbm_to_mw(noise_power_dbm(cfg));
    const double snr = std::exp2(se_target) - 1.0;
    const double omega = 4.0 * std::numbers::pi * frequency_hz / kSpeedOfLight;
    return 4.0 * p_mw * gain * gain / (noise_mw * snr * omega * omega);
}

void check_plan_inputs(const RadioConfig& cfg, double frequency_hz, double absorption_per_m,
                       double se_target) {
    cfg.validate();
    if (!(frequency_hz > 0.0))
        throw std::invalid_argument("plan: frequency must be positive");
    if (!(absorption_per_m >= 0.0) || !std::isfinite(absorption_per_m))
        throw std::invalid_argument("plan: absorption coefficient must be non-negative");
    if (!(se_target > 0.0))
        throw std::invalid_argument("plan: target spectral efficiency must be positive");
}

// x of minimal magnitude solving (1/x) exp(tau/x) = K for positive tau, K.
double reciprocal_form_root(double tau, double constant) {
    const double arg = tau * constant;
    if (tau == 0.0 || arg == 0.0) return 1.0 / constant;
    return tau / lambert_w(arg);
}

// Positive x solving x^2 exp(tau*x) = K, polished by one log-domain Newton step.
double square_form_root(double tau, double constant) {
    double x;
    if (tau == 0.0) {
        x = std::sqrt(constant);
    } else {
        const double arg = 0.5 * tau * std::sqrt(constant);
        x = arg == 0.0 ? std::sqrt(constant) : 2.0 * lambert_w(arg) / tau;
    }
    for (int i = 0; i < 2; ++i) {
        const double g = 2.0 * std::log(x) + tau * x - std::log(constant);
        x -= g / (2.0 / x + tau);
    }
    return x;
}

double square_form_residual(double x, double tau, double constant) {
    return std::abs(x * x * std::exp(tau * x) - constant) / constant;
}

double reciprocal_form_residual(double x, double tau, double constant) {
    return std::abs(std::exp(tau / x) / x - constant) / constant;
}

} // namespace

void PlanProblem::validate() const {
    check_plan_inputs(config, frequency_hz, absorption_per_m, se_target);
    if (!(room_length_m > 0.0))
        throw std::invalid_argument("plan: room length must be positive");
}

double k_factor(KVariant variant, const KFactorInputs& in) {
    check_plan_inputs(in.config, in.frequency_hz, 0.0, in.se_target);
    const double q = range_constant_m2(in.config, in.frequency_hz, in.se_target);
    switch (variant) {
    case KVariant::k1:
        if (!(in.room_length_m > 0.0))
            throw std::invalid_argument("k_factor: k1 needs a room length");
        return q / (in.room_length_m * in.room_length_m);
    case KVariant::k2:
        if (!(in.room_length_m > 0.0) || in.ap_count < 1)
            throw std::invalid_argument("k_factor: k2 needs a room length and an AP count");
        return q / (in.room_length_m * in.room_length_m) / static_cast<double>(in.ap_count);
    case KVariant::k3:
        if (in.ap_count < 1) throw std::invalid_argument("k_factor: k3 needs an AP count");
        return q / static_cast<double>(in.ap_count);
    case KVariant::k4: {
        if (in.ap_count < 1 || !(in.cell_radius_m > 0.0))
            throw std::invalid_argument("k_factor: k4 needs an AP count and a cell radius");
        const double q2 = range_constant_m2(in.config, in.frequency_hz, 2.0 * in.se_target);
        const double span = 2.0 * in.cell_radius_m;
        return 0.5 * q2 / (static_cast<double>(in.ap_count) * span * span);
    }
    }
    throw std::invalid_argument("k_factor: unknown variant");
}

double tau_factor(TauVariant variant, double absorption_per_m, double geometry) {
    if (!(absorption_per_m >= 0.0))
        throw std::invalid_argument("tau_factor: absorption coefficient must be non-negative");
    switch (variant) {
    case TauVariant::tau1:
        if (!(geometry > 0.0)) throw std::invalid_argument("tau_factor: tau1 needs a room length");
        return absorption_per_m * geometry / 2.0;
    case TauVariant::tau2:
        if (!(geometry >= 1.0)) throw std::invalid_argument("tau_factor: tau2 needs an AP count");
        return absorption_per_m / (2.0 * geometry);
    case TauVariant::tau3:
        return absorption_per_m;
    case TauVariant::tau4:
        if (!(geometry > 0.0)) throw std::invalid_argument("tau_factor: tau4 needs a cell radius");
        return 2.0 * geometry * absorption_per_m;
    }
    throw std::invalid_argument("tau_factor: unknown variant");
}

PlanResult optimal_ap_count(const PlanProblem& p) {
    p.validate();
    KFactorInputs in;
    in.config = p.config;
    in.frequency_hz = p.frequency_hz;
    in.se_target = p.se_target;
    in.room_length_m = p.room_length_m;
    const double k1 = k_factor(KVariant::k1, in);
    const double tau1 = tau_factor(TauVariant::tau1, p.absorption_per_m, p.room_length_m);
    if (!std::isfinite(k1) || !(k1 > 0.0))
        throw std::invalid_argument("optimal_ap_count: non-finite plan constants");

    const double n_star = reciprocal_form_root(tau1, k1);
    long n = static_cast<long>(std::ceil(n_star));
    if (n < 1) n = 1;

    auto meets = [&](long count) {
        const double power = p.config.total_power_dbm - linear_to_db(static_cast<double>(count));
        const LinkGeometry g{p.frequency_hz, p.room_length_m / (2.0 * count), p.absorption_per_m};
        return spectral_efficiency(power, p.config, g) >= p.se_target;
    };
    // pin the ceiling against the rate check so N works and N-1 does not
    long guard = 0;
    while (!meets(n)) {
        ++n;
        if (++guard > 4) throw std::runtime_error("optimal_ap_count: closed form failed to localize N");
    }
    while (n > 1 && meets(n - 1)) {
        --n;
        if (++guard > 8) throw std::runtime_error("optimal_ap_count: closed form failed to localize N");
    }

    PlanResult r;
    r.ap_count = n;
    r.cell_radius_m = p.room_length_m / (2.0 * n);
    r.per_ap_power_dbm = p.config.total_power_dbm - linear_to_db(static_cast<double>(n));
    r.achieved_se = spectral_efficiency(r.per_ap_power_dbm, p.config,
                                        {p.frequency_hz, r.cell_radius_m, p.absorption_per_m});
    r.k_factor = k1;
    r.tau_factor = tau1;
    r.residual = reciprocal_form_residual(n_star, tau1, k1);
    r.feasible = true;
    return r;
}

RoomLengthResult optimal_room_length(long ap_count, const RadioConfig& cfg, double frequency_hz,
                                     double absorption_per_m, double se_target) {
    check_plan_inputs(cfg, frequency_hz, absorption_per_m, se_target);
    if (ap_count < 1) throw std::invalid_argument("optimal_room_length: AP count must be at least 1");
    const double q = range_constant_m2(cfg, frequency_hz, se_target);
    // the fixed-N feasibility relation resolves the plan constant to N*q
    const double k2 = static_cast<double>(ap_count) * q;
    const double tau2 = tau_factor(TauVariant::tau2, absorption_per_m, static_cast<double>(ap_count));
    if (!std::isfinite(k2) || !(k2 > 0.0))
        throw std::runtime_error("optimal_room_length: infeasible, power budget yields no positive room length");
    RoomLengthResult r;
    r.k2 = k2;
    r.tau2 = tau2;
    r.length_m = square_form_root(tau2, k2);
    r.residual = square_form_residual(r.length_m, tau2, k2);
    return r;
}

RadiusIncreaseResult radius_increase(long ap_count, double cell_radius_m, const RadioConfig& cfg,
                                     double frequency_hz, double absorption_per_m,
                                     double se_target) {
    check_plan_inputs(cfg, frequency_hz, absorption_per_m, se_target);
    if (ap_count < 1) throw std::invalid_argument("radius_increase: AP count must be at least 1");
    if (!(cell_radius_m > 0.0))
        throw std::invalid_argument("radius_increase: cell radius must be positive");
    const double k3 = range_constant_m2(cfg, frequency_hz, se_target) / static_cast<double>(ap_count);
    const double tau3 = tau_factor(TauVariant::tau3, absorption_per_m);
    RadiusIncreaseResult r;
    r.k3 = k3;
    r.tau3 = tau3;
    r.grown_radius_m = square_form_root(tau3, k3);
    r.residual = square_form_residual(r.grown_radius_m, tau3, k3);
    r.feasible = r.grown_radius_m >= cell_radius_m;
    r.overlap_m = r.feasible ? r.grown_radius_m - cell_radius_m : 0.0;
    return r;
}

RepeaterResult repeater_count(long ap_count, double cell_radius_m, const RadioConfig& cfg,
                              double frequency_hz, double absorption_per_m, double se_target) {
    check_plan_inputs(cfg, frequency_hz, absorption_per_m, se_target);
    if (ap_count < 1) throw std::invalid_argument("repeater_count: AP count must be at least 1");
    if (!(cell_radius_m > 0.0))
        throw std::invalid_argument("repeater_count: cell radius must be positive");

    KFactorInputs in;
    in.config = cfg;
    in.frequency_hz = frequency_hz;
    in.se_target = se_target;
    in.ap_count = ap_count;
    in.cell_radius_m = cell_radius_m;
    const double k4 = k_factor(KVariant::k4, in);
    const double tau4 = tau_factor(TauVariant::tau4, absorption_per_m, cell_radius_m);

    const double m_star = reciprocal_form_root(tau4, k4);
    long m = static_cast<long>(std::ceil(m_star));
    if (m < 1) m = 1;
    auto meets_reduced = [&](long count) {
        return k4 * count * std::exp(-tau4 / count) >= 1.0;
    };
    long guard = 0;
    while (!meets_reduced(m) && guard++ < 4) ++m;
    while (m > 1 && meets_reduced(m - 1) && guard++ < 8) --m;

    // direct link check: hops of 2r/m at combined power and doubled rate
    const double merged_power_dbm =
        cfg.total_power_dbm - linear_to_db(static_cast<double>(ap_count)) + linear_to_db(2.0);
    auto meets_link = [&](long count) {
        const LinkGeometry g{frequency_hz, 2.0 * cell_radius_m / count, absorption_per_m};
        return spectral_efficiency(merged_power_dbm, cfg, g) >= 2.0 * se_target;
    };
    const double shannon_star = tau4 == 0.0 || tau4 * std::sqrt(k4) == 0.0
                                    ? 1.0 / std::sqrt(k4)
                                    : tau4 / (2.0 * lambert_w(0.5 * tau4 * std::sqrt(k4)));
    long ms = static_cast<long>(std::ceil(shannon_star));
    if (ms < 1) ms = 1;
    guard = 0;
    while (!meets_link(ms) && guard++ < 4) ++ms;
    while (ms > 1 && meets_link(ms - 1) && guard++ < 8) --ms;

    RepeaterResult r;
    r.count = m;
    r.count_shannon = ms;
    r.k4 = k4;
    r.tau4 = tau4;
    r.residual = reciprocal_form_residual(m_star, tau4, k4);
    return r;
}

double solve_by_bisection(PlanningEquation eq, double tau, double constant) {
    if (!(constant > 0.0) || !(tau >= 0.0))
        throw std::invalid_argument("solve_by_bisection: needs tau >= 0 and a positive constant");
    const bool reciprocal =
        eq == PlanningEquation::ap_count || eq == PlanningEquation::repeater;
    // log-domain residuals keep huge constants in range
    auto f = [&](double x) {
        if (reciprocal) return tau / x - std::log(x) - std::log(constant);
        return 2.0 * std::log(x) + tau * x - std::log(constant);
    };
    double lo = 1e-30;
    double hi = 1.0;
    int expand = 0;
    if (reciprocal) {
        // f decreasing: f(lo) > 0 > f(hi) at the root
        while (f(hi) > 0.0 && expand++ < 2200) hi *= 2.0;
        while (f(lo) < 0.0 && expand++ < 2200) lo /= 2.0;
        if (!(f(lo) > 0.0 && f(hi) < 0.0))
            throw std::runtime_error("solve_by_bisection: no sign change in bracket");
    } else {
        while (f(hi) < 0.0 && expand++ < 2200) hi *= 2.0;
        while (f(lo) > 0.0 && expand++ < 2200) lo /= 2.0;
        if (!(f(lo) < 0.0 && f(hi) > 0.0))
            throw std::runtime_error("solve_by_bisection: no sign change in bracket");
    }
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double v = f(mid);
        const bool left = reciprocal ? v > 0.0 : v < 0.0;
        if (left)
            lo = mid;
        else
            hi = mid;
    }
    const double root = 0.5 * (lo + hi);
    const double rel = reciprocal ? reciprocal_form_residual(root, tau, constant)
                                  : square_form_residual(root, tau, constant);
    if (rel > 1e-12)
        throw std::runtime_error("solve_by_bisection: residual above tolerance");
    return root;
}

} // namespace thzplan
