#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "robustgap/sampler.hpp"

#include <cstdio>
#include <vector>

// The AVX2 kernels must reproduce the scalar reference bit for bit: same
// streams, same operations, same order, lanes only. Anything short of exact
// equality here is a bug, not a tolerance question.

using namespace rgap;

namespace {

bool have_avx2() {
    if (!sampler::avx2_available()) {
        std::puts("AVX2 kernels not available on this build/CPU; equivalence degenerates");
        return false;
    }
    return true;
}

} // namespace

TEST_CASE("gaussian kernel: AVX2 output is bit-identical to scalar") {
    if (!have_avx2()) return;
    for (const auto& spec : {gaussian::GaussianSpec{1.0, {1.0}, {2.0}, 0.5},
                             gaussian::GaussianSpec{0.7, {1.0, 0.0, 0.3}, {2.0, 1.0, 0.4}, 1.1},
                             gaussian::GaussianSpec{2.0, {0.2}, {0.1}, 0.2}}) {
        for (std::int64_t n : {1, 2, 7, 64}) {
            const std::uint64_t trials = 1003;  // deliberately not a multiple of 4
            std::vector<double> a(trials), b(trials);
            sampler::gauss_trials(spec, n, 12345, 0, trials, a.data(), sampler::Backend::Scalar);
            sampler::gauss_trials(spec, n, 12345, 0, trials, b.data(), sampler::Backend::Avx2);
            CHECK(a == b);
        }
    }
}

TEST_CASE("bernoulli kernel: AVX2 output is bit-identical to scalar") {
    if (!have_avx2()) return;
    for (const auto& spec : {bernoulli::BernoulliSpec{1.0, {1.0}, 0.5, 0.2},
                             bernoulli::BernoulliSpec{1.5, {1.0, 2.0}, 0.1, 0.7},
                             bernoulli::BernoulliSpec{0.5, {0.0, 1.0}, 0.9, 0.18}}) {
        for (std::int64_t n : {1, 5, 33}) {
            const std::uint64_t trials = 517;
            std::vector<double> a(trials), b(trials);
            sampler::bern_trials(spec, n, 999, 0, trials, a.data(), sampler::Backend::Scalar);
            sampler::bern_trials(spec, n, 999, 0, trials, b.data(), sampler::Backend::Avx2);
            CHECK(a == b);
        }
    }
}

TEST_CASE("offset trial ranges agree between backends") {
    if (!have_avx2()) return;
    const gaussian::GaussianSpec spec{1.0, {1.0}, {2.0}, 0.5};
    std::vector<double> whole(256), part(100);
    sampler::gauss_trials(spec, 5, 7, 0, 256, whole.data(), sampler::Backend::Scalar);
    // an unaligned window, filled by the AVX2 path, must match the reference
    sampler::gauss_trials(spec, 5, 7, 37, 137, part.data(), sampler::Backend::Avx2);
    for (std::size_t i = 0; i < part.size(); ++i) CHECK(part[i] == whole[37 + i]);
}

TEST_CASE("estimates identical under Auto, Scalar and forced-AVX2 backends") {
    if (!have_avx2()) return;
    const bernoulli::BernoulliSpec spec{1.0, {1.0}, 0.5, 0.2};
    const auto s = sampler::mc_gap_classification(spec, 9, 30000, 4, 2, sampler::Backend::Scalar);
    const auto v = sampler::mc_gap_classification(spec, 9, 30000, 4, 3, sampler::Backend::Avx2);
    const auto a = sampler::mc_gap_classification(spec, 9, 30000, 4, 1, sampler::Backend::Auto);
    CHECK(s.mean == v.mean);
    CHECK(s.std_err == v.std_err);
    CHECK(s.mean == a.mean);
}
