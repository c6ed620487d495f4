#pragma once

#include "robustgap/sampler.hpp"

#include <cstdint>
#include <utility>
#include <vector>

// OLS and adversarially robust linear regression. The robust objective
//   F(w) = sum_i (|y_i - w x_i| + eps |w|)^2
// decouples per dimension; each 1-d problem is convex piecewise quadratic
// with breakpoints at 0 and y_i/x_i and is minimized exactly by a breakpoint
// sweep. The n = 1 theory (closed form, exact Poisson gap) lives here too.

namespace rgap::regression {

enum class InputDist { StandardNormal, ShiftedPoisson };

struct RegressionSpec {
    std::vector<double> w_star{1.0};
    double noise_var = 1.0;
    InputDist input_dist = InputDist::StandardNormal;
    double lambda = 5.0;  // ShiftedPoisson rate; x = Pois(lambda) + 1
    double eps = 0.0;

    void validate() const;
};

struct Dataset {
    std::vector<std::vector<double>> xs;  // n rows, d columns
    std::vector<double> ys;               // n responses
};

/// Least-squares fit (X^T X)^{-1} X^T y. Throws numeric_error when X^T X is
/// rank deficient.
std::vector<double> ols_fit(const Dataset& data);

/// Global minimizer of F over w, ties broken toward smaller |w| then smaller w.
double robust_fit_1d(const std::vector<double>& xs, const std::vector<double>& ys, double eps);

/// robust_fit_1d applied independently to each coordinate's column.
std::vector<double> robust_fit(const Dataset& data, double eps);

/// E[x^2] for the input distribution: 1 for StandardNormal,
/// lambda + (lambda+1)^2 for ShiftedPoisson(lambda).
double population_second_moment(InputDist dist, double lambda = 0.0);

/// Monte Carlo estimate of the scaled gap E[(w_rob - w*)^2 - (w_std - w*)^2]
/// (d = 1). Trials whose inputs are all zero are resampled from the next
/// attempt substream and counted in McEstimate::rejects.
sampler::McEstimate mc_scaled_gap(const RegressionSpec& spec, std::int64_t n,
                                  std::uint64_t trials, std::uint64_t seed,
                                  int workers = 0);

/// Scaled population test losses of the standard and robust fits:
/// E[(w - w*)^2] + noise_var / E[x^2], estimated over the same trial streams.
std::pair<sampler::McEstimate, sampler::McEstimate>
mc_scaled_losses(const RegressionSpec& spec, std::int64_t n,
                 std::uint64_t trials, std::uint64_t seed, int workers = 0);

/// Exact n = 1 gap for x ~ Pois(lambda) + 1, |w_star| >= 1:
///   E[x^2] * sum_{1 <= k < eps} P[x = k] ((w*)^2 - 1/k^2).
/// Non-negative, nondecreasing in eps, bounded by E[x^2] (w*)^2.
double g1_poisson_exact(double lambda, double w_star, double eps);

/// Single-point robust fit: y1/x1 when |x1| > eps, else 0 (at |x1| == eps the
/// objective is flat between the two and the tie rule picks 0).
double wrob1_closed_form(double x1, double y1, double eps);

/// Exact population test loss ||w - w*||^2_{E[xx^T]} + noise_var for i.i.d.
/// coordinates of the input distribution.
double test_loss(const std::vector<double>& w, const RegressionSpec& spec);

} // namespace rgap::regression
