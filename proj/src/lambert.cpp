#include "thzplan/lambert.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace thzplan {
namespace {

constexpr double kInvE = 0.36787944117144233;
constexpr double kBranchClamp = 1e-15;

// Expansion around the branch point W(-1/e) = -1 in p = sqrt(2(e*x + 1)).
// The principal branch takes +p, the lower branch -p.
double branch_point_series(double p) {
    const double c2 = -1.0 / 3.0;
    const double c3 = 11.0 / 72.0;
    const double c4 = -43.0 / 540.0;
    const double c5 = 769.0 / 17280.0;
    const double c6 = -221.0 / 8505.0;
    return -1.0 + p * (1.0 + p * (c2 + p * (c3 + p * (c4 + p * (c5 + p * c6)))));
}

double halley_refine(double w, double x) {
    for (int i = 0; i < 60; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        if (f == 0.0) break;
        const double wp1 = w + 1.0;
        const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        const double step = f / denom;
        if (!std::isfinite(step)) break;
        w -= step;
        if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w)))
            break;
    }
    return w;
}

// Large arguments: Newton on g(w) = w + log(w) - log(x), which never overflows.
double principal_log_domain(double x) {
    const double lx = std::log(x);
    double w = lx - std::log(lx);
    for (int i = 0; i < 60; ++i) {
        const double g = w + std::log(w) - lx;
        const double step = g / (1.0 + 1.0 / w);
        w -= step;
        if (std::abs(step) <= 1e-16 * w) break;
    }
    return w;
}

// Lower branch for x close to 0-: Newton on g(w) = w + log(-w) - log(-x).
double lower_log_domain(double x) {
    const double lx = std::log(-x);
    const double l2 = std::log(-lx);
    double w = lx - l2 + l2 / lx;
    if (w > -1.0) w = -1.0 - 1e-12;
    for (int i = 0; i < 80; ++i) {
        const double g = w + std::log(-w) - lx;
        const double step = g / (1.0 + 1.0 / w);
        w -= step;
        if (std::abs(step) <= 1e-16 * std::abs(w)) break;
    }
    return w;
}

double principal_branch(double x) {
    if (x == 0.0) return 0.0;
    if (x > 1e10) return principal_log_domain(x);

    double w;
    if (x < 0.0) {
        const double p2 = 2.0 * (std::exp(1.0) * x + 1.0);
        if (p2 <= 0.0) return -1.0;
        const double p = std::sqrt(p2);
        if (p < 1e-3) return branch_point_series(p);
        w = branch_point_series(p);
    } else if (x <= 1.0) {
        w = x * (1.0 + x * (-1.0 + x * 1.5));
    } else {
        // Iacono-Boyd style global estimate, good to a few percent
        w = std::log(6.0 * x / (5.0 * std::log(2.4 * x / std::log(1.0 + 2.4 * x))));
    }
    return halley_refine(w, x);
}

double lower_branch(double x) {
    // far down the branch the product form loses conditioning; solve the log
    // form instead
    if (x >= -1e-4) return lower_log_domain(x);

    const double p2 = 2.0 * (std::exp(1.0) * x + 1.0);
    if (p2 <= 0.0) return -1.0;
    const double p = std::sqrt(p2);
    if (p < 1e-3) return branch_point_series(-p);

    double w;
    if (x < -0.27) {
        w = branch_point_series(-p);
    } else {
        const double l1 = std::log(-x);
        const double l2 = std::log(-l1);
        w = l1 - l2 + l2 / l1;
    }
    if (w > -1.0) w = -1.0;
    return halley_refine(w, x);
}

} // namespace

double lambert_w(double x, WBranch branch) {
    if (std::isnan(x)) throw std::domain_error("lambert_w: argument is NaN");
    if (x < -kInvE) {
        if (x >= -kInvE - kBranchClamp) {
            x = -kInvE;
        } else {
            throw std::domain_error("lambert_w: argument below -1/e");
        }
    }
    if (branch == WBranch::principal) return principal_branch(x);
    if (x >= 0.0) throw std::domain_error("lambert_w: lower branch requires x < 0");
    return lower_branch(x);
}

} // namespace thzplan
