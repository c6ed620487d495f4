#include "robustgap/phase.hpp"

#include "robustgap/errors.hpp"
#include "robustgap/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rgap::phase {

namespace {

void require_unit_open(double delta, const char* what) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error(std::string(what) + ": delta must be in (0,1)");
}

// h_poly at a = exp(L); bisection runs on the L = x0^2 scale
double h_at_log(double L, double delta) {
    return numerics::h_poly(std::exp(L), delta);
}

} // namespace

double a0_lower(double delta) {
    require_unit_open(delta, "a0_lower");
    const double num = (2.0 + delta) / (2.0 * (1.0 - delta));
    return std::pow(num, 1.0 / (delta - 0.5 * delta * delta));
}

CriticalPoint find_critical(double delta, double tol) {
    require_unit_open(delta, "find_critical");
    if (!(tol > 0.0)) throw std::domain_error("find_critical: tol must be > 0");

    // h is positive on (1, a1), negative beyond; a0 < a1 so seed there.
    double lo = std::log(a0_lower(delta));
    double hi = lo;
    bool bracketed = false;
    for (int i = 0; i < 200; ++i) {
        hi *= 2.0;
        if (!std::isfinite(hi)) break;
        if (h_at_log(hi, delta) < 0.0) {
            bracketed = true;
            break;
        }
        lo = hi;
    }
    if (!bracketed)
        throw numeric_error("find_critical: failed to bracket root of h "
                            "(delta too close to 1 for the floating range)");

    while (hi - lo > tol * lo) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at floating resolution
        if (h_at_log(mid, delta) > 0.0)
            lo = mid;
        else
            hi = mid;
    }

    CriticalPoint cp;
    cp.delta = delta;
    const double mid = 0.5 * (lo + hi);
    cp.a1 = std::exp(mid);
    cp.x0 = std::sqrt(mid);
    cp.lower_bracket = std::max(1.5, -2.0 * std::log1p(-delta));
    cp.upper_bracket = hi;
    return cp;
}

double gaussian_critical_n(double delta, double snr_inv) {
    if (!(snr_inv > 0.0)) throw std::domain_error("gaussian_critical_n: snr_inv must be > 0");
    if (delta >= 1.0) return std::numeric_limits<double>::infinity();
    const CriticalPoint cp = find_critical(delta);
    return cp.x0 * cp.x0 * snr_inv * snr_inv;
}

double bernoulli_critical_n(double delta, double tau) {
    if (!(tau > 0.0 && tau < 1.0)) throw std::domain_error("bernoulli_critical_n: tau must be in (0,1)");
    if (delta >= 1.0) return std::numeric_limits<double>::infinity();
    const CriticalPoint cp = find_critical(delta);
    return cp.x0 * cp.x0 * (1.0 / (tau * tau) - 1.0);
}

} // namespace rgap::phase
