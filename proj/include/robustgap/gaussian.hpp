#pragma once

#include "robustgap/regime.hpp"

#include <cstdint>
#include <vector>

// Exact analysis of the Gaussian classification model: x | y ~ N(y*mu, Sigma)
// with diagonal Sigma, labels uniform on {-1,+1}, linear loss -y<w,x>, and
// weights constrained to the l-inf ball of radius W. Everything here is a
// closed form in the normal CDF; Monte Carlo counterparts live in sampler.

namespace rgap::gaussian {

struct GaussianSpec {
    double W = 1.0;                // weight-ball radius, > 0
    std::vector<double> mu;        // class-mean coordinates, >= 0
    std::vector<double> sigma;     // per-coordinate standard deviations, > 0
    double eps = 0.0;              // perturbation budget, >= 0

    void validate() const;         // throws std::domain_error on violation
};

/// Exact generalization gap after training on n samples:
///   g_n = 2 W sum_{j: mu_j > 0} mu_j * phi_gap(sqrt(n) mu_j / sigma_j, eps/mu_j).
double exact_gap(const GaussianSpec& spec, std::int64_t n);

/// Infinite-data limit 2 W sum_{j: mu_j > 0} mu_j * H(eps/mu_j - 1).
double gap_limit(const GaussianSpec& spec);

/// Weak/Strong/Indeterminate classification with monotonicity brackets.
/// Throws degenerate_model_error when every mu_j is zero.
RegimeReport regime(const GaussianSpec& spec);

/// Expected test loss of the standard classifier over training draws:
///   -W sum_j mu_j (2 Phi(sqrt(n) mu_j / sigma_j) - 1).
double test_loss_standard(const GaussianSpec& spec, std::int64_t n);

/// Expected test loss of the robust classifier: standard loss plus exact_gap.
double test_loss_robust(const GaussianSpec& spec, std::int64_t n);

} // namespace rgap::gaussian
