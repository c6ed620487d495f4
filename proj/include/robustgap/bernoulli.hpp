#pragma once

#include "robustgap/regime.hpp"

#include <cstdint>
#include <vector>

// Exact analysis of the Bernoulli classification model: coordinate j equals
// +y*theta_j with probability (1+tau)/2 and -y*theta_j otherwise. The gap is
// a finite binomial sum (the empirical mean u_j is lattice-valued), and it
// oscillates inside a strip of width O(1/sqrt(n)) around a smooth center
// built from the normal approximation.

namespace rgap::bernoulli {

struct BernoulliSpec {
    double W = 1.0;              // weight-ball radius, > 0
    std::vector<double> theta;   // coordinate magnitudes, >= 0
    double tau = 0.5;            // signal strength, in (0,1)
    double eps = 0.0;            // perturbation budget, >= 0

    void validate() const;
};

struct StripPoint {
    std::int64_t n;
    double gap;        // exact g_n
    double center;     // s_n
    double halfwidth;  // Berry-Esseen strip half-width
};

/// Exact gap by summation over S ~ Bin(n, (1+tau)/2) with u_j = theta_j(2S-n)/n:
/// 2 W tau sum_j theta_j (Pr[0<u<eps] - Pr[-eps<u<0] + (Pr[u=eps] - Pr[u=-eps])/2).
///
/// The lattice atoms at u = +-eps carry half weight; u is formed in floating
/// point exactly as the Monte Carlo estimator forms it, so the two paths
/// target the same expectation down to the atom convention.
double exact_gap(const BernoulliSpec& spec, std::int64_t n);

/// Smooth strip center
/// s_n = 2 W tau sum_{j: theta_j>0} theta_j phi_gap(tau sqrt(n)/sqrt(1-tau^2), eps/(theta_j tau)).
double strip_center(const BernoulliSpec& spec, std::int64_t n);

/// Berry-Esseen half-width 8 C0 W tau |theta|_1 (tau^2+1) / (sqrt(n) sqrt(1-tau^2))
/// with the two-point-support constant C0 = (sqrt(10)+3)/(6 sqrt(2 pi)).
double strip_halfwidth(const BernoulliSpec& spec, std::int64_t n);

/// Infinite-data limit 2 W tau sum_{j: theta_j>0} theta_j H(eps/(theta_j tau) - 1).
double gap_limit(const BernoulliSpec& spec);

/// Weak/Strong/Indeterminate classification; Strong is the non-strict case
/// eps/tau >= max theta_j. Throws degenerate_model_error for all-zero theta.
RegimeReport regime(const BernoulliSpec& spec);

/// Expected test loss of the standard classifier:
/// -W tau sum_j theta_j (Pr[u_j > 0] - Pr[u_j < 0]), exact binomial sums.
double test_loss_standard(const BernoulliSpec& spec, std::int64_t n);

/// Standard loss plus exact_gap.
double test_loss_robust(const BernoulliSpec& spec, std::int64_t n);

/// Two-point-support Berry-Esseen constant.
double berry_esseen_c0();

} // namespace rgap::bernoulli
