#pragma once

#include "robustgap/bernoulli.hpp"
#include "robustgap/gaussian.hpp"
#include "robustgap/rng.hpp"

#include <cstdint>
#include <vector>

// Data generators for both classification models and the deterministic Monte
// Carlo engine. Per-trial values depend only on (seed, trial, attempt); the
// cross-trial reduction is a fixed pairwise tree, so estimates are identical
// for any worker count. The per-trial simulation has a scalar reference
// kernel and an AVX2 kernel (four trials in lane-parallel lockstep) that are
// bit-identical; the fastest available one is selected at runtime.

namespace rgap::sampler {

struct LabeledSample {
    std::vector<double> x;
    int y;  // -1 or +1
};

struct McEstimate {
    double mean = 0.0;
    double std_err = 0.0;   // sample standard deviation / sqrt(trials)
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t rejects = 0;  // resampled degenerate trials (regression only)
};

enum class Backend { Auto, Scalar, Avx2 };

/// True when the AVX2 kernels are compiled in and the CPU supports them.
bool avx2_available();

/// n i.i.d. draws: y uniform on {-1,+1}, x_j = y mu_j + sigma_j z.
std::vector<LabeledSample> sample_gaussian(const gaussian::GaussianSpec& spec,
                                           std::int64_t n, rng::Stream& stream);

/// n i.i.d. draws: x_j = +-y theta_j, + with probability (1+tau)/2.
std::vector<LabeledSample> sample_bernoulli(const bernoulli::BernoulliSpec& spec,
                                            std::int64_t n, rng::Stream& stream);

/// Monte Carlo gap estimate: per trial, form u = (1/n) sum y_i x_i and take
/// the analytic test expectation <w_std - w_rob, class mean>. workers = 0
/// means hardware concurrency.
McEstimate mc_gap_classification(const gaussian::GaussianSpec& spec, std::int64_t n,
                                 std::uint64_t trials, std::uint64_t seed,
                                 int workers = 0, Backend backend = Backend::Auto);
McEstimate mc_gap_classification(const bernoulli::BernoulliSpec& spec, std::int64_t n,
                                 std::uint64_t trials, std::uint64_t seed,
                                 int workers = 0, Backend backend = Backend::Auto);

/// Deterministic pairwise (tree) sum; independent of how values were produced.
double pairwise_sum(const double* v, std::size_t n);

/// Mean and standard error of a per-trial value array via pairwise reduction.
McEstimate summarize(const std::vector<double>& values, std::uint64_t seed);

/// Fill out[t - t0] for t in [t0, t1) with per-trial gap values; exposed so
/// the kernel variants can be equivalence-tested directly.
void gauss_trials(const gaussian::GaussianSpec& spec, std::int64_t n, std::uint64_t seed,
                  std::uint64_t t0, std::uint64_t t1, double* out, Backend backend);
void bern_trials(const bernoulli::BernoulliSpec& spec, std::int64_t n, std::uint64_t seed,
                 std::uint64_t t0, std::uint64_t t1, double* out, Backend backend);

} // namespace rgap::sampler
