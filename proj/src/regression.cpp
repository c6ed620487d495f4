#include "robustgap/regression.hpp"

#include "robustgap/errors.hpp"
#include "robustgap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace rgap::regression {

void RegressionSpec::validate() const {
    if (w_star.empty()) throw std::domain_error("RegressionSpec: w_star must be non-empty");
    for (double w : w_star)
        if (!std::isfinite(w)) throw std::domain_error("RegressionSpec: w_star must be finite");
    if (!(noise_var > 0.0)) throw std::domain_error("RegressionSpec: noise_var must be > 0");
    if (input_dist == InputDist::ShiftedPoisson && !(lambda > 0.0))
        throw std::domain_error("RegressionSpec: lambda must be > 0");
    if (!(eps >= 0.0) || !std::isfinite(eps))
        throw std::domain_error("RegressionSpec: eps must be finite and >= 0");
}

std::vector<double> ols_fit(const Dataset& data) {
    const std::size_t n = data.xs.size();
    if (n == 0 || data.ys.size() != n)
        throw std::domain_error("ols_fit: empty dataset or row count mismatch");
    const std::size_t d = data.xs[0].size();
    for (const auto& row : data.xs)
        if (row.size() != d) throw std::domain_error("ols_fit: ragged rows");

    // normal equations, Gaussian elimination with partial pivoting (d is small)
    std::vector<double> A(d * d, 0.0), b(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < d; ++r) {
            b[r] += data.xs[i][r] * data.ys[i];
            for (std::size_t c = 0; c < d; ++c) A[r * d + c] += data.xs[i][r] * data.xs[i][c];
        }
    }
    double scale = 0.0;
    for (std::size_t r = 0; r < d; ++r) scale = std::max(scale, std::fabs(A[r * d + r]));
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < d; ++r)
            if (std::fabs(A[r * d + col]) > std::fabs(A[piv * d + col])) piv = r;
        if (std::fabs(A[piv * d + col]) <= scale * 1e-13 || A[piv * d + col] == 0.0)
            throw numeric_error("ols_fit: X^T X is rank deficient");
        if (piv != col) {
            for (std::size_t c = 0; c < d; ++c) std::swap(A[piv * d + c], A[col * d + c]);
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < d; ++r) {
            const double f = A[r * d + col] / A[col * d + col];
            for (std::size_t c = col; c < d; ++c) A[r * d + c] -= f * A[col * d + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> w(d);
    for (std::size_t r = d; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < d; ++c) s -= A[r * d + c] * w[c];
        w[r] = s / A[r * d + r];
    }
    return w;
}

namespace {

struct Flip {
    double at;   // breakpoint y_i/x_i
    double x2;   // 2 x_i
    double y2;   // 2 y_i
};

// Minimizes F(w) = sum (|y_i - w x_i| + eps|w|)^2 by sweeping segments between
// breakpoints. On a segment F = P + 2 Q w + R w^2 with
//   Q = eps t Sy - Sxy,  R = n eps^2 - 2 eps t Sx + Sxx,
// where Sy = sum s_i y_i, Sx = sum s_i x_i over the segment's residual signs
// s_i and t = sign(w). Crossing y_i/x_i flips s_i; crossing 0 flips t.
double robust_fit_1d_core(const double* x, const double* y, std::size_t n, double eps,
                          std::vector<Flip>& flips) {
    double Sxy = 0.0, Sxx = 0.0, P = 0.0, Sy = 0.0, Sx = 0.0;
    flips.clear();
    for (std::size_t i = 0; i < n; ++i) {
        Sxy += x[i] * y[i];
        Sxx += x[i] * x[i];
        P += y[i] * y[i];
        // residual sign as w -> -inf: sign(y - w x) -> sign(x) for x != 0
        double s;
        if (x[i] > 0.0) s = 1.0;
        else if (x[i] < 0.0) s = -1.0;
        else s = (y[i] >= 0.0) ? 1.0 : -1.0;  // constant in w
        Sy += s * y[i];
        Sx += s * x[i];
        if (x[i] != 0.0) flips.push_back({y[i] / x[i], 2.0 * s * x[i], 2.0 * s * y[i]});
    }
    if (eps == 0.0) {
        // plain least squares; bitwise-identical to ols_fit on the same data
        return Sxx > 0.0 ? Sxy / Sxx : 0.0;
    }
    flips.push_back({0.0, 0.0, 0.0});  // t flip marker
    std::sort(flips.begin(), flips.end(),
              [](const Flip& a, const Flip& b) { return a.at < b.at; });

    const double neps2 = static_cast<double>(n) * eps * eps;
    double t = -1.0;
    double bestF = std::numeric_limits<double>::infinity();
    double bestW = 0.0;
    auto consider = [&](double w, double F) {
        if (F < bestF ||
            (F == bestF && (std::fabs(w) < std::fabs(bestW) ||
                            (std::fabs(w) == std::fabs(bestW) && w < bestW)))) {
            bestF = F;
            bestW = w;
        }
    };
    auto scan_segment = [&](double lo, double hi) {
        const double Q = eps * t * Sy - Sxy;
        const double R = neps2 - 2.0 * eps * t * Sx + Sxx;
        if (R > 0.0) {
            const double v = -Q / R;
            if (v >= lo && v <= hi) consider(v, P + 2.0 * Q * v + R * v * v);
        }
        if (std::isfinite(lo)) consider(lo, P + 2.0 * Q * lo + R * lo * lo);
        if (std::isfinite(hi)) consider(hi, P + 2.0 * Q * hi + R * hi * hi);
    };

    double lo = -std::numeric_limits<double>::infinity();
    std::size_t k = 0;
    while (k < flips.size()) {
        const double b = flips[k].at;
        scan_segment(lo, b);
        while (k < flips.size() && flips[k].at == b) {
            if (flips[k].x2 == 0.0 && flips[k].y2 == 0.0) {
                t = 1.0;  // crossed w = 0
            } else {
                Sx -= flips[k].x2;
                Sy -= flips[k].y2;
            }
            ++k;
        }
        lo = b;
    }
    scan_segment(lo, std::numeric_limits<double>::infinity());
    return bestW;
}

} // namespace

double robust_fit_1d(const std::vector<double>& xs, const std::vector<double>& ys, double eps) {
    if (xs.empty() || xs.size() != ys.size())
        throw std::domain_error("robust_fit_1d: empty data or length mismatch");
    if (!(eps >= 0.0)) throw std::domain_error("robust_fit_1d: eps must be >= 0");
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
            throw std::domain_error("robust_fit_1d: non-finite data");
    std::vector<Flip> scratch;
    return robust_fit_1d_core(xs.data(), ys.data(), xs.size(), eps, scratch);
}

std::vector<double> robust_fit(const Dataset& data, double eps) {
    const std::size_t n = data.xs.size();
    if (n == 0 || data.ys.size() != n)
        throw std::domain_error("robust_fit: empty dataset or row count mismatch");
    const std::size_t d = data.xs[0].size();
    std::vector<double> w(d), col(n);
    std::vector<Flip> scratch;
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = data.xs[i][j];
        w[j] = robust_fit_1d_core(col.data(), data.ys.data(), n, eps, scratch);
    }
    return w;
}

double population_second_moment(InputDist dist, double lambda) {
    if (dist == InputDist::StandardNormal) return 1.0;
    if (!(lambda >= 0.0)) throw std::domain_error("population_second_moment: lambda must be >= 0");
    return lambda + (lambda + 1.0) * (lambda + 1.0);
}

double g1_poisson_exact(double lambda, double w_star, double eps) {
    if (!(lambda > 0.0)) throw std::domain_error("g1_poisson_exact: lambda must be > 0");
    if (!(std::fabs(w_star) >= 1.0))
        throw std::domain_error("g1_poisson_exact: requires |w_star| >= 1");
    if (!(eps >= 0.0)) throw std::domain_error("g1_poisson_exact: eps must be >= 0");
    const double ws2 = w_star * w_star;
    double sum = 0.0;
    for (std::int64_t k = 1; static_cast<double>(k) < eps; ++k) {
        const double dk = static_cast<double>(k);
        sum += numerics::poisson_pmf(lambda, k - 1) * (ws2 - 1.0 / (dk * dk));
    }
    return population_second_moment(InputDist::ShiftedPoisson, lambda) * sum;
}

double wrob1_closed_form(double x1, double y1, double eps) {
    if (std::fabs(x1) > eps) return y1 / x1;
    return 0.0;
}

double test_loss(const std::vector<double>& w, const RegressionSpec& spec) {
    spec.validate();
    if (w.size() != spec.w_star.size())
        throw std::domain_error("test_loss: dimension mismatch with w_star");
    double mean, var;
    if (spec.input_dist == InputDist::StandardNormal) {
        mean = 0.0;
        var = 1.0;
    } else {
        mean = spec.lambda + 1.0;
        var = spec.lambda;
    }
    double sq = 0.0, lin = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double v = w[j] - spec.w_star[j];
        sq += v * v;
        lin += v;
    }
    return var * sq + mean * mean * lin * lin + spec.noise_var;
}

namespace {

struct TrialFits {
    double wstd;
    double wrob;
    std::uint64_t attempts;
};

// One d = 1 regression trial: interleaved (x_i, noise_i) draws so a smaller n
// is a prefix of a larger one on the same stream; all-zero inputs trigger a
// resample from the next attempt substream.
TrialFits run_trial(const RegressionSpec& spec, std::int64_t n, std::uint64_t seed,
                    std::uint64_t trial, std::vector<double>& xs, std::vector<double>& ys,
                    std::vector<Flip>& scratch) {
    const double w0 = spec.w_star[0];
    const double noise_sd = std::sqrt(spec.noise_var);
    for (std::uint32_t attempt = 0;; ++attempt) {
        if (attempt == 64) throw numeric_error("mc regression trial: resample limit hit");
        rng::Stream st(seed, trial, attempt);
        double sxx = 0.0, sxy = 0.0;
        for (std::int64_t i = 0; i < n; ++i) {
            double x;
            if (spec.input_dist == InputDist::StandardNormal) {
                x = st.next_normal();
            } else {
                x = 1.0 + static_cast<double>(st.next_poisson(spec.lambda));
            }
            const double noise = st.next_normal();
            const double y = w0 * x + noise_sd * noise;
            xs[static_cast<std::size_t>(i)] = x;
            ys[static_cast<std::size_t>(i)] = y;
            sxx += x * x;
            sxy += x * y;
        }
        if (sxx == 0.0) continue;  // degenerate draw, counted by the caller
        TrialFits f;
        f.attempts = attempt + 1;
        f.wstd = sxy / sxx;
        f.wrob = robust_fit_1d_core(xs.data(), ys.data(), static_cast<std::size_t>(n),
                                    spec.eps, scratch);
        return f;
    }
}

template <class PerTrial>
std::uint64_t run_regression_mc(const RegressionSpec& spec, std::int64_t n,
                                std::uint64_t trials, std::uint64_t seed, int workers,
                                PerTrial&& per_trial) {
    spec.validate();
    if (spec.w_star.size() != 1)
        throw std::domain_error("regression Monte Carlo paths are one-dimensional");
    if (n < 1) throw std::domain_error("regression mc: n must be >= 1");
    if (trials < 2) throw std::domain_error("regression mc: trials must be >= 2");

    if (workers <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        workers = hc == 0 ? 1 : static_cast<int>(hc);
    }
    const std::uint64_t w = static_cast<std::uint64_t>(workers);
    std::vector<std::uint64_t> rejects;
    auto fill = [&](std::uint64_t lo, std::uint64_t hi, std::uint64_t& rej) {
        std::vector<double> xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
        std::vector<Flip> scratch;
        for (std::uint64_t t = lo; t < hi; ++t) {
            const TrialFits f = run_trial(spec, n, seed, t, xs, ys, scratch);
            rej += f.attempts - 1;
            per_trial(t, f);
        }
    };
    if (w <= 1 || trials < 2 * w) {
        rejects.assign(1, 0);
        fill(0, trials, rejects[0]);
    } else {
        const std::uint64_t chunk = (trials + w - 1) / w;
        rejects.assign(w, 0);
        std::vector<std::thread> pool;
        for (std::uint64_t i = 0; i < w; ++i) {
            const std::uint64_t lo = i * chunk;
            const std::uint64_t hi = std::min(trials, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi, i] { fill(lo, hi, rejects[i]); });
        }
        for (auto& th : pool) th.join();
    }
    std::uint64_t total_rejects = 0;
    for (std::uint64_t r : rejects) total_rejects += r;
    return total_rejects;
}

} // namespace

sampler::McEstimate mc_scaled_gap(const RegressionSpec& spec, std::int64_t n,
                                  std::uint64_t trials, std::uint64_t seed, int workers) {
    const double w0 = spec.w_star.empty() ? 0.0 : spec.w_star[0];
    std::vector<double> values(trials);
    const std::uint64_t rejects =
        run_regression_mc(spec, n, trials, seed, workers, [&](std::uint64_t t, const TrialFits& f) {
            const double er = f.wrob - w0;
            const double es = f.wstd - w0;
            values[t] = er * er - es * es;
        });
    sampler::McEstimate est = sampler::summarize(values, seed);
    est.rejects = rejects;
    return est;
}

std::pair<sampler::McEstimate, sampler::McEstimate>
mc_scaled_losses(const RegressionSpec& spec, std::int64_t n,
                 std::uint64_t trials, std::uint64_t seed, int workers) {
    const double w0 = spec.w_star.empty() ? 0.0 : spec.w_star[0];
    spec.validate();
    const double c = spec.noise_var / population_second_moment(spec.input_dist, spec.lambda);
    std::vector<double> vstd(trials), vrob(trials);
    const std::uint64_t rejects =
        run_regression_mc(spec, n, trials, seed, workers, [&](std::uint64_t t, const TrialFits& f) {
            const double es = f.wstd - w0;
            const double er = f.wrob - w0;
            vstd[t] = es * es + c;
            vrob[t] = er * er + c;
        });
    sampler::McEstimate a = sampler::summarize(vstd, seed);
    sampler::McEstimate b = sampler::summarize(vrob, seed);
    a.rejects = rejects;
    b.rejects = rejects;
    return {a, b};
}

} // namespace rgap::regression
