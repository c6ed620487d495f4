#pragma once

// Locates the stationary point x0 of the gap kernel phi_gap(., delta) and
// turns it into critical sample sizes. The stationary point is the root a1 of
// h_poly on (1, inf); x0 = sqrt(log(a1)). The analytic upper bound on x0^2
// involves an unspecified universal constant, so the computed root stands in
// for it everywhere.

namespace rgap::phase {

struct CriticalPoint {
    double delta;          // perturbation-to-signal ratio, in (0,1)
    double a1;             // unique root of h_poly on (1, inf)
    double x0;             // sqrt(log(a1)); phi_gap(., delta) peaks here
    double lower_bracket;  // closed-form lower bound on x0^2: max{3/2, 2 log 1/(1-delta)}
    double upper_bracket;  // upper end of the bisection bracket on x0^2
};

/// Location a0 of the maximum of h_poly(., delta) on (1, inf):
///   a0 = ((2+delta)/(2(1-delta)))^(1/(delta - delta^2/2)),  a0 >= e^(3/2).
/// Requires delta in (0,1).
double a0_lower(double delta);

/// Bisection for the root a1 of h_poly, bracket seeded at [a0, U] with U found
/// by doubling (in log scale) until h goes negative. tol bounds the relative
/// width of the final bracket. Throws rgap-level numeric failure if no sign
/// change appears within 200 doublings.
CriticalPoint find_critical(double delta, double tol = 1e-12);

/// Continuous-n argmax of the Gaussian per-coordinate gap term:
/// x0(delta)^2 * snr_inv^2 with snr_inv = sigma/mu. Returns +inf for
/// delta >= 1 (the term increases for all n).
double gaussian_critical_n(double delta, double snr_inv);

/// Continuous-n argmax of the Bernoulli strip-center term:
/// x0(delta)^2 * (1/tau^2 - 1). Returns +inf for delta >= 1.
double bernoulli_critical_n(double delta, double tau);

} // namespace rgap::phase
