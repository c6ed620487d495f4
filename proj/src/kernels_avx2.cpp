#include "kernels.hpp"

#include "robustgap/rng.hpp"

#include <immintrin.h>

#include <algorithm>
#include <vector>

// AVX2 variants of the per-trial Monte Carlo kernels. Four trials run in
// lane-parallel lockstep, one Philox stream per lane, and every floating
// operation mirrors the scalar reference in kind and order, so the per-trial
// outputs are bit-identical to gauss_trials_scalar / bern_trials_scalar
// (asserted by the equivalence tests). Keep -ffp-contract=off: a fused
// multiply-add here would break that contract.

namespace rgap::sampler::kern {

namespace {

// ---- four Philox-4x32-10 streams, state stored word-SoA ----

inline void mulhilo4(__m128i a, std::uint32_t m, __m128i& hi, __m128i& lo) {
    const __m128i mv = _mm_set1_epi32(static_cast<int>(m));
    const __m128i p02 = _mm_mul_epu32(a, mv);                       // lanes 0,2
    const __m128i p13 = _mm_mul_epu32(_mm_srli_epi64(a, 32), mv);   // lanes 1,3
    lo = _mm_blend_epi16(p02, _mm_slli_epi64(p13, 32), 0xCC);
    hi = _mm_blend_epi16(_mm_srli_epi64(p02, 32), p13, 0xCC);
}

struct Philox4 {
    __m128i c0, c1, c2, c3;  // counter words, one 32-bit lane per stream
    __m128i k0i, k1i;
    __m256i buf[2];
    int idx = 2;

    Philox4(std::uint64_t seed, std::uint64_t trial_base) {
        c0 = _mm_setzero_si128();
        c1 = _mm_setzero_si128();  // attempt = 0
        c2 = _mm_set_epi32(static_cast<int>(static_cast<std::uint32_t>(trial_base + 3)),
                           static_cast<int>(static_cast<std::uint32_t>(trial_base + 2)),
                           static_cast<int>(static_cast<std::uint32_t>(trial_base + 1)),
                           static_cast<int>(static_cast<std::uint32_t>(trial_base + 0)));
        c3 = _mm_set_epi32(static_cast<int>(static_cast<std::uint32_t>((trial_base + 3) >> 32)),
                           static_cast<int>(static_cast<std::uint32_t>((trial_base + 2) >> 32)),
                           static_cast<int>(static_cast<std::uint32_t>((trial_base + 1) >> 32)),
                           static_cast<int>(static_cast<std::uint32_t>((trial_base + 0) >> 32)));
        k0i = _mm_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(seed)));
        k1i = _mm_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(seed >> 32)));
    }

    void refill() {
        __m128i x0 = c0, x1 = c1, x2 = c2, x3 = c3;
        __m128i k0 = k0i, k1 = k1i;
        const __m128i w0 = _mm_set1_epi32(static_cast<int>(rng::philox::kWeyl0));
        const __m128i w1 = _mm_set1_epi32(static_cast<int>(rng::philox::kWeyl1));
        for (int round = 0; round < 10; ++round) {
            __m128i hi0, lo0, hi1, lo1;
            mulhilo4(x0, rng::philox::kMul0, hi0, lo0);
            mulhilo4(x2, rng::philox::kMul1, hi1, lo1);
            const __m128i n0 = _mm_xor_si128(_mm_xor_si128(hi1, x1), k0);
            const __m128i n2 = _mm_xor_si128(_mm_xor_si128(hi0, x3), k1);
            x0 = n0;
            x1 = lo1;
            x2 = n2;
            x3 = lo0;
            k0 = _mm_add_epi32(k0, w0);
            k1 = _mm_add_epi32(k1, w1);
        }
        buf[0] = _mm256_or_si256(_mm256_cvtepu32_epi64(x0),
                                 _mm256_slli_epi64(_mm256_cvtepu32_epi64(x1), 32));
        buf[1] = _mm256_or_si256(_mm256_cvtepu32_epi64(x2),
                                 _mm256_slli_epi64(_mm256_cvtepu32_epi64(x3), 32));
        idx = 0;
        c0 = _mm_add_epi32(c0, _mm_set1_epi32(1));
    }

    __m256i next_u64() {
        if (idx == 2) refill();
        return buf[idx++];
    }
};

// ---- lanewise counterparts of to_unit / inv_normal_cdf / sign ----

inline __m256d to_unit4(__m256i u) {
    const __m256i u52 = _mm256_srli_epi64(u, 12);
    const __m256d two52 = _mm256_set1_pd(0x1.0p52);
    const __m256d d = _mm256_sub_pd(
        _mm256_castsi256_pd(_mm256_or_si256(u52, _mm256_castpd_si256(two52))), two52);
    return _mm256_mul_pd(_mm256_add_pd(d, _mm256_set1_pd(0.5)), _mm256_set1_pd(0x1p-52));
}

inline __m256d inv_normal4(__m256d p) {
    using namespace rng::detail;
    const __m256d q = _mm256_sub_pd(p, _mm256_set1_pd(0.5));
    const __m256d r = _mm256_mul_pd(q, q);
    __m256d num = _mm256_set1_pd(kCentralNum[6]);
    __m256d den = _mm256_set1_pd(kCentralDen[6]);
    for (int i = 5; i >= 0; --i) {
        num = _mm256_add_pd(_mm256_mul_pd(num, r), _mm256_set1_pd(kCentralNum[i]));
        den = _mm256_add_pd(_mm256_mul_pd(den, r), _mm256_set1_pd(kCentralDen[i]));
    }
    __m256d x = _mm256_mul_pd(q, _mm256_div_pd(num, den));
    const __m256d mlo = _mm256_cmp_pd(p, _mm256_set1_pd(kTailSplit), _CMP_LT_OQ);
    const __m256d mhi = _mm256_cmp_pd(p, _mm256_set1_pd(1.0 - kTailSplit), _CMP_GT_OQ);
    const int mask = _mm256_movemask_pd(_mm256_or_pd(mlo, mhi));
    if (mask) {
        alignas(32) double pa[4], xa[4];
        _mm256_store_pd(pa, p);
        _mm256_store_pd(xa, x);
        for (int l = 0; l < 4; ++l)
            if (mask & (1 << l)) xa[l] = rng::inv_normal_cdf(pa[l]);
        x = _mm256_load_pd(xa);
    }
    return x;
}

inline __m256d sign_bit_to_pm1(__m256i u) {
    // lane top bit set -> +1.0, else -1.0 (blendv keys off the sign bit)
    return _mm256_blendv_pd(_mm256_set1_pd(-1.0), _mm256_set1_pd(1.0),
                            _mm256_castsi256_pd(u));
}

inline __m256d sign04(__m256d v) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d pos = _mm256_and_pd(_mm256_cmp_pd(v, zero, _CMP_GT_OQ), one);
    const __m256d neg = _mm256_and_pd(_mm256_cmp_pd(v, zero, _CMP_LT_OQ), one);
    return _mm256_sub_pd(pos, neg);
}

inline __m256d gap_weight4(__m256d u, __m256d eps) {
    const __m256d s = sign04(u);
    const __m256d shifted = _mm256_sub_pd(u, _mm256_mul_pd(eps, s));
    return _mm256_sub_pd(s, sign04(shifted));
}

} // namespace

void gauss_trials_avx2(const GaussParams& p, std::uint64_t t0, std::uint64_t t1, double* out) {
    const __m256d dn = _mm256_set1_pd(static_cast<double>(p.n));
    const __m256d eps = _mm256_set1_pd(p.eps);
    const __m256d W = _mm256_set1_pd(p.W);
    std::vector<double> acc(4 * p.d);
    std::uint64_t t = t0;
    for (; t + 4 <= t1; t += 4) {
        Philox4 rng4(p.seed, t);
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::int64_t i = 0; i < p.n; ++i) {
            const __m256d y = sign_bit_to_pm1(rng4.next_u64());
            for (std::size_t j = 0; j < p.d; ++j) {
                const __m256d z = inv_normal4(to_unit4(rng4.next_u64()));
                const __m256d x = _mm256_add_pd(_mm256_mul_pd(y, _mm256_set1_pd(p.mu[j])),
                                                _mm256_mul_pd(_mm256_set1_pd(p.sigma[j]), z));
                double* a = acc.data() + 4 * j;
                _mm256_storeu_pd(a, _mm256_add_pd(_mm256_loadu_pd(a), _mm256_mul_pd(y, x)));
            }
        }
        __m256d gap = _mm256_setzero_pd();
        for (std::size_t j = 0; j < p.d; ++j) {
            const __m256d u = _mm256_div_pd(_mm256_loadu_pd(acc.data() + 4 * j), dn);
            gap = _mm256_add_pd(gap, _mm256_mul_pd(_mm256_set1_pd(p.mu[j]), gap_weight4(u, eps)));
        }
        _mm256_storeu_pd(out + (t - t0), _mm256_mul_pd(W, gap));
    }
    if (t < t1) gauss_trials_scalar(p, t, t1, out + (t - t0));
}

void bern_trials_avx2(const BernParams& p, std::uint64_t t0, std::uint64_t t1, double* out) {
    const __m256d dn = _mm256_set1_pd(static_cast<double>(p.n));
    const __m256d eps = _mm256_set1_pd(p.eps);
    const __m256d W = _mm256_set1_pd(p.W);
    const __m256d pp = _mm256_set1_pd(0.5 * (1.0 + p.tau));
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    std::vector<double> cnt(4 * p.d);
    std::uint64_t t = t0;
    for (; t + 4 <= t1; t += 4) {
        Philox4 rng4(p.seed, t);
        std::fill(cnt.begin(), cnt.end(), 0.0);
        for (std::int64_t i = 0; i < p.n; ++i) {
            (void)rng4.next_u64();  // y word, consumed to keep the stream layout
            for (std::size_t j = 0; j < p.d; ++j) {
                const __m256d unit = to_unit4(rng4.next_u64());
                const __m256d b = _mm256_and_pd(_mm256_cmp_pd(unit, pp, _CMP_LT_OQ), one);
                double* c = cnt.data() + 4 * j;
                _mm256_storeu_pd(c, _mm256_add_pd(_mm256_loadu_pd(c), b));
            }
        }
        __m256d gap = _mm256_setzero_pd();
        for (std::size_t j = 0; j < p.d; ++j) {
            const __m256d cj = _mm256_loadu_pd(cnt.data() + 4 * j);
            const __m256d u = _mm256_mul_pd(
                _mm256_set1_pd(p.theta[j]),
                _mm256_div_pd(_mm256_sub_pd(_mm256_mul_pd(two, cj), dn), dn));
            gap = _mm256_add_pd(
                gap, _mm256_mul_pd(_mm256_set1_pd(p.theta[j] * p.tau), gap_weight4(u, eps)));
        }
        _mm256_storeu_pd(out + (t - t0), _mm256_mul_pd(W, gap));
    }
    if (t < t1) bern_trials_scalar(p, t, t1, out + (t - t0));
}

} // namespace rgap::sampler::kern
