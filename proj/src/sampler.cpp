#include "robustgap/sampler.hpp"

#include "robustgap/classifiers.hpp"
#include "kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace rgap::classifiers {

std::vector<double> standard_classifier(const std::vector<double>& u, double W) {
    if (!(W > 0.0)) throw std::domain_error("standard_classifier: W must be > 0");
    std::vector<double> w(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) w[j] = W * sign0(u[j]);
    return w;
}

std::vector<double> robust_classifier(const std::vector<double>& u, double W, double eps) {
    if (!(W > 0.0)) throw std::domain_error("robust_classifier: W must be > 0");
    if (!(eps >= 0.0)) throw std::domain_error("robust_classifier: eps must be >= 0");
    std::vector<double> w(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        const double s = sign0(u[j]);
        w[j] = W * sign0(u[j] - eps * s);
    }
    return w;
}

} // namespace rgap::classifiers

namespace rgap::sampler {

using classifiers::gap_weight;

bool avx2_available() {
#if defined(RGAP_HAVE_AVX2_KERNELS)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::vector<LabeledSample> sample_gaussian(const gaussian::GaussianSpec& spec,
                                           std::int64_t n, rng::Stream& stream) {
    spec.validate();
    if (n < 1) throw std::domain_error("sample_gaussian: n must be >= 1");
    const std::size_t d = spec.mu.size();
    std::vector<LabeledSample> out(static_cast<std::size_t>(n));
    for (auto& s : out) {
        const double y = stream.next_sign();
        s.y = y > 0.0 ? 1 : -1;
        s.x.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            const double z = stream.next_normal();
            s.x[j] = y * spec.mu[j] + spec.sigma[j] * z;
        }
    }
    return out;
}

std::vector<LabeledSample> sample_bernoulli(const bernoulli::BernoulliSpec& spec,
                                            std::int64_t n, rng::Stream& stream) {
    spec.validate();
    if (n < 1) throw std::domain_error("sample_bernoulli: n must be >= 1");
    const std::size_t d = spec.theta.size();
    const double p = 0.5 * (1.0 + spec.tau);
    std::vector<LabeledSample> out(static_cast<std::size_t>(n));
    for (auto& s : out) {
        const double y = stream.next_sign();
        s.y = y > 0.0 ? 1 : -1;
        s.x.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            const bool plus = stream.next_unit() < p;
            s.x[j] = plus ? y * spec.theta[j] : -y * spec.theta[j];
        }
    }
    return out;
}

namespace kern {

// Reference kernels. Draw order per trial: one sign word for y, then one word
// per coordinate, sample by sample; identical to sample_gaussian /
// sample_bernoulli, and mirrored operation for operation by the AVX2 kernels.

void gauss_trials_scalar(const GaussParams& p, std::uint64_t t0, std::uint64_t t1, double* out) {
    std::vector<double> acc(p.d);
    const double dn = static_cast<double>(p.n);
    for (std::uint64_t t = t0; t < t1; ++t) {
        rng::Stream st(p.seed, t, 0);
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::int64_t i = 0; i < p.n; ++i) {
            const double y = st.next_sign();
            for (std::size_t j = 0; j < p.d; ++j) {
                const double z = st.next_normal();
                const double x = y * p.mu[j] + p.sigma[j] * z;
                acc[j] += y * x;
            }
        }
        double gap = 0.0;
        for (std::size_t j = 0; j < p.d; ++j) {
            const double u = acc[j] / dn;
            gap += p.mu[j] * gap_weight(u, p.eps);
        }
        out[t - t0] = p.W * gap;
    }
}

void bern_trials_scalar(const BernParams& p, std::uint64_t t0, std::uint64_t t1, double* out) {
    std::vector<double> cnt(p.d);
    const double dn = static_cast<double>(p.n);
    const double pp = 0.5 * (1.0 + p.tau);
    for (std::uint64_t t = t0; t < t1; ++t) {
        rng::Stream st(p.seed, t, 0);
        std::fill(cnt.begin(), cnt.end(), 0.0);
        for (std::int64_t i = 0; i < p.n; ++i) {
            (void)st.next_sign();  // y; does not affect u but keeps stream layout
            for (std::size_t j = 0; j < p.d; ++j)
                cnt[j] += (st.next_unit() < pp) ? 1.0 : 0.0;
        }
        double gap = 0.0;
        for (std::size_t j = 0; j < p.d; ++j) {
            const double u = p.theta[j] * ((2.0 * cnt[j] - dn) / dn);
            gap += p.theta[j] * p.tau * gap_weight(u, p.eps);
        }
        out[t - t0] = p.W * gap;
    }
}

} // namespace kern

namespace {

template <class Fill>
void run_partitioned(std::uint64_t trials, int workers, Fill&& fill) {
    if (workers <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        workers = hc == 0 ? 1 : static_cast<int>(hc);
    }
    const std::uint64_t w = static_cast<std::uint64_t>(workers);
    if (w <= 1 || trials < 2 * w) {
        fill(0, trials);
        return;
    }
    const std::uint64_t chunk = (trials + w - 1) / w;
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (std::uint64_t i = 0; i < w; ++i) {
        const std::uint64_t lo = i * chunk;
        const std::uint64_t hi = std::min(trials, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fill, lo, hi] { fill(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

bool use_avx2(Backend b) {
    switch (b) {
        case Backend::Scalar: return false;
        case Backend::Avx2:
            if (!avx2_available())
                throw std::runtime_error("AVX2 kernels unavailable on this build/CPU");
            return true;
        default: return avx2_available();
    }
}

} // namespace

void gauss_trials(const gaussian::GaussianSpec& spec, std::int64_t n, std::uint64_t seed,
                  std::uint64_t t0, std::uint64_t t1, double* out, Backend backend) {
    const kern::GaussParams p{spec.W, spec.eps, spec.mu.data(), spec.sigma.data(),
                              spec.mu.size(), n, seed};
#if defined(RGAP_HAVE_AVX2_KERNELS)
    if (use_avx2(backend)) {
        kern::gauss_trials_avx2(p, t0, t1, out);
        return;
    }
#else
    (void)use_avx2(backend);
#endif
    kern::gauss_trials_scalar(p, t0, t1, out);
}

void bern_trials(const bernoulli::BernoulliSpec& spec, std::int64_t n, std::uint64_t seed,
                 std::uint64_t t0, std::uint64_t t1, double* out, Backend backend) {
    const kern::BernParams p{spec.W, spec.eps, spec.tau, spec.theta.data(),
                             spec.theta.size(), n, seed};
#if defined(RGAP_HAVE_AVX2_KERNELS)
    if (use_avx2(backend)) {
        kern::bern_trials_avx2(p, t0, t1, out);
        return;
    }
#else
    (void)use_avx2(backend);
#endif
    kern::bern_trials_scalar(p, t0, t1, out);
}

double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 32) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

namespace {

double pairwise_sqdev(const double* v, std::size_t n, double mean) {
    if (n <= 32) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = v[i] - mean;
            s += d * d;
        }
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sqdev(v, h, mean) + pairwise_sqdev(v + h, n - h, mean);
}

} // namespace

McEstimate summarize(const std::vector<double>& values, std::uint64_t seed) {
    if (values.size() < 2)
        throw std::domain_error("summarize: at least 2 trials required for a standard error");
    McEstimate e;
    e.trials = values.size();
    e.seed = seed;
    const double n = static_cast<double>(values.size());
    e.mean = pairwise_sum(values.data(), values.size()) / n;
    const double ss = pairwise_sqdev(values.data(), values.size(), e.mean);
    e.std_err = std::sqrt(ss / (n - 1.0) / n);
    return e;
}

McEstimate mc_gap_classification(const gaussian::GaussianSpec& spec, std::int64_t n,
                                 std::uint64_t trials, std::uint64_t seed,
                                 int workers, Backend backend) {
    spec.validate();
    if (n < 1) throw std::domain_error("mc_gap_classification: n must be >= 1");
    if (trials < 2) throw std::domain_error("mc_gap_classification: trials must be >= 2");
    std::vector<double> values(trials);
    run_partitioned(trials, workers, [&](std::uint64_t lo, std::uint64_t hi) {
        gauss_trials(spec, n, seed, lo, hi, values.data() + lo, backend);
    });
    return summarize(values, seed);
}

McEstimate mc_gap_classification(const bernoulli::BernoulliSpec& spec, std::int64_t n,
                                 std::uint64_t trials, std::uint64_t seed,
                                 int workers, Backend backend) {
    spec.validate();
    if (n < 1) throw std::domain_error("mc_gap_classification: n must be >= 1");
    if (trials < 2) throw std::domain_error("mc_gap_classification: trials must be >= 2");
    std::vector<double> values(trials);
    run_partitioned(trials, workers, [&](std::uint64_t lo, std::uint64_t hi) {
        bern_trials(spec, n, seed, lo, hi, values.data() + lo, backend);
    });
    return summarize(values, seed);
}

} // namespace rgap::sampler
