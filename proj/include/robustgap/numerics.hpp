#pragma once

#include <cstdint>

// Special functions and discrete distributions shared by every other module.
// All functions are pure and safe for unrestricted concurrent use.

namespace rgap::numerics {

/// Standard normal CDF, absolute error <= 1e-14 over the real line.
/// Throws std::domain_error on non-finite input.
double std_normal_cdf(double x);

/// Upper-tail standard normal probability 1 - Phi(x), evaluated without
/// cancellation (full relative accuracy in the tail).
double std_normal_cdf_c(double x);

/// Standard normal density.
double std_normal_pdf(double x);

/// Per-coordinate gap kernel  2*Phi(x) - Phi(x*(1+delta)) - Phi(x*(1-delta)).
///
/// Evaluated as (Phic(x*(1+delta)) - Phic(x)) + (Phic(x*(1-delta)) - Phic(x))
/// with Phic the upper tail, which stays accurate for large x where the naive
/// form loses every significant digit. Requires x >= 0, delta > 0.
double phi_gap(double x, double delta);

/// Auxiliary polynomial  h(a) = -delta + (delta-1)*a^(2*delta)
///                              + 2*a^(delta*(delta+2)/2) - 1,  a >= 1.
///
/// sign(h(exp(x^2))) equals the sign of d/dx phi_gap(x, delta). Exponentials
/// are guarded so that huge a yields the correct sign instead of inf - inf.
double h_poly(double a, double delta);

/// Binomial pmf P[Bin(n, p) = k]. Out-of-range k returns 0.
///
/// Saddle-point evaluation (stirlerr/bd0), relative error a few ulp, O(1) in n.
double binom_pmf(std::int64_t n, double p, std::int64_t k);

/// Poisson pmf P[Pois(lambda) = k], same evaluation scheme as binom_pmf.
double poisson_pmf(double lambda, std::int64_t k);

/// Heaviside step with the half-convention H(0) = 1/2.
double heaviside(double x);

/// sign with sign(0) = 0.
inline double sign(double x) { return (x > 0.0) - (x < 0.0); }

namespace detail {
double stirlerr(std::int64_t n);          // log(n!) - Stirling approximation
double bd0(double x, double np);          // x*log(x/np) + np - x, stably
} // namespace detail

} // namespace rgap::numerics
