#pragma once

#include <cstdint>

// Private kernel interface between sampler.cpp (scalar reference, dispatch)
// and kernels_avx2.cpp. Parameter blocks use raw pointers so the AVX2
// translation unit stays free of heavier headers.

namespace rgap::sampler::kern {

struct GaussParams {
    double W;
    double eps;
    const double* mu;
    const double* sigma;
    std::size_t d;
    std::int64_t n;
    std::uint64_t seed;
};

struct BernParams {
    double W;
    double eps;
    double tau;
    const double* theta;
    std::size_t d;
    std::int64_t n;
    std::uint64_t seed;
};

void gauss_trials_scalar(const GaussParams& p, std::uint64_t t0, std::uint64_t t1, double* out);
void bern_trials_scalar(const BernParams& p, std::uint64_t t0, std::uint64_t t1, double* out);

#if defined(RGAP_HAVE_AVX2_KERNELS)
void gauss_trials_avx2(const GaussParams& p, std::uint64_t t0, std::uint64_t t1, double* out);
void bern_trials_avx2(const BernParams& p, std::uint64_t t0, std::uint64_t t1, double* out);
#endif

} // namespace rgap::sampler::kern
