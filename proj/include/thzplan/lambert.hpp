#pragma once

namespace thzplan {

// Real branches of the Lambert W function, the inverse of w * exp(w).
// The principal branch covers x >= -1/e with W >= -1; the lower branch covers
// -1/e <= x < 0 with W <= -1.
enum class WBranch { principal, negative_one };

// Evaluates W on the requested branch. Inputs up to 1e-15 below -1/e are
// clamped to the branch point to tolerate round-off in callers' products;
// anything further out (or x >= 0 on the lower branch) throws
// std::domain_error. The result satisfies |w*exp(w) - x| <= 1e-12 * max(1, |x|).
double lambert_w(double x, WBranch branch = WBranch::principal);

} // namespace thzplan
