#include "robustgap/bernoulli.hpp"

#include "robustgap/classifiers.hpp"
#include "robustgap/errors.hpp"
#include "robustgap/numerics.hpp"
#include "robustgap/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rgap::bernoulli {

using numerics::binom_pmf;
using numerics::heaviside;
using numerics::phi_gap;

void BernoulliSpec::validate() const {
    if (!(W > 0.0)) throw std::domain_error("BernoulliSpec: W must be > 0");
    if (theta.empty()) throw std::domain_error("BernoulliSpec: theta must be non-empty");
    for (double t : theta)
        if (!(t >= 0.0) || !std::isfinite(t))
            throw std::domain_error("BernoulliSpec: theta coordinates must be finite and >= 0");
    if (!(tau > 0.0 && tau < 1.0)) throw std::domain_error("BernoulliSpec: tau must be in (0,1)");
    if (!(eps >= 0.0) || !std::isfinite(eps))
        throw std::domain_error("BernoulliSpec: eps must be finite and >= 0");
}

namespace {

// E[f(u_j)] with u_j = theta_j (2S - n)/n, S ~ Bin(n, (1+tau)/2).
// u is formed with the same floating expression the sampler uses.
template <class F>
double binom_expect(std::int64_t n, double tau, double theta_j, F&& f) {
    const double p = 0.5 * (1.0 + tau);
    const double dn = static_cast<double>(n);
    double acc = 0.0;
    for (std::int64_t S = 0; S <= n; ++S) {
        const double u = theta_j * ((2.0 * static_cast<double>(S) - dn) / dn);
        const double w = f(u);
        if (w != 0.0) acc += binom_pmf(n, p, S) * w;
    }
    return acc;
}

} // namespace

double exact_gap(const BernoulliSpec& spec, std::int64_t n) {
    spec.validate();
    if (n < 1) throw std::domain_error("exact_gap: n must be >= 1");
    if (spec.eps == 0.0) return 0.0;
    double sum = 0.0;
    for (double th : spec.theta) {
        if (th <= 0.0) continue;
        sum += th * binom_expect(n, spec.tau, th, [&](double u) {
            return classifiers::gap_weight(u, spec.eps);
        });
    }
    return spec.W * spec.tau * sum;
}

double strip_center(const BernoulliSpec& spec, std::int64_t n) {
    spec.validate();
    if (n < 1) throw std::domain_error("strip_center: n must be >= 1");
    if (spec.eps == 0.0) return 0.0;
    const double x = spec.tau * std::sqrt(static_cast<double>(n))
                   / std::sqrt(1.0 - spec.tau * spec.tau);
    double sum = 0.0;
    for (double th : spec.theta) {
        if (th <= 0.0) continue;
        sum += th * phi_gap(x, spec.eps / (th * spec.tau));
    }
    return 2.0 * spec.W * spec.tau * sum;
}

double berry_esseen_c0() {
    return (std::sqrt(10.0) + 3.0) / (6.0 * std::sqrt(2.0 * M_PI));
}

double strip_halfwidth(const BernoulliSpec& spec, std::int64_t n) {
    spec.validate();
    if (n < 1) throw std::domain_error("strip_halfwidth: n must be >= 1");
    double l1 = 0.0;
    for (double th : spec.theta) l1 += std::fabs(th);
    const double t2 = spec.tau * spec.tau;
    return 8.0 * berry_esseen_c0() * spec.W * spec.tau * l1 * (t2 + 1.0)
         / (std::sqrt(static_cast<double>(n)) * std::sqrt(1.0 - t2));
}

double gap_limit(const BernoulliSpec& spec) {
    spec.validate();
    double sum = 0.0;
    for (double th : spec.theta)
        if (th > 0.0) sum += th * heaviside(spec.eps / (th * spec.tau) - 1.0);
    return 2.0 * spec.W * spec.tau * sum;
}

RegimeReport regime(const BernoulliSpec& spec) {
    spec.validate();
    double tmin = std::numeric_limits<double>::infinity();
    double tmax = 0.0;
    for (double th : spec.theta) {
        if (th <= 0.0) continue;
        tmin = std::min(tmin, th);
        tmax = std::max(tmax, th);
    }
    if (tmax == 0.0)
        throw degenerate_model_error("regime: all theta coordinates are zero");

    RegimeReport rep;
    rep.per_coordinate_critical.reserve(spec.theta.size());
    for (double th : spec.theta) {
        if (th <= 0.0 || spec.eps <= 0.0) {
            rep.per_coordinate_critical.push_back(std::numeric_limits<double>::quiet_NaN());
        } else {
            rep.per_coordinate_critical.push_back(
                phase::bernoulli_critical_n(spec.eps / (th * spec.tau), spec.tau));
        }
    }

    const double ratio = spec.eps / spec.tau;
    if (ratio >= tmax) {  // non-strict per the strong-regime statement
        rep.regime = Regime::Strong;
        return rep;
    }
    if (ratio < tmin) {
        rep.regime = Regime::Weak;
        const double pref = 1.0 / (spec.tau * spec.tau) - 1.0;
        double minlog = std::numeric_limits<double>::infinity();
        double from = 0.0;
        for (std::size_t j = 0; j < spec.theta.size(); ++j) {
            const double th = spec.theta[j];
            if (th <= 0.0) continue;
            minlog = std::min(minlog, -2.0 * std::log1p(-spec.eps / (th * spec.tau)));
            if (spec.eps > 0.0) from = std::max(from, rep.per_coordinate_critical[j]);
        }
        rep.increasing_until = pref * std::max(1.5, minlog);
        if (spec.eps > 0.0) rep.decreasing_from = from;
        return rep;
    }
    rep.regime = Regime::Indeterminate;
    return rep;
}

double test_loss_standard(const BernoulliSpec& spec, std::int64_t n) {
    spec.validate();
    if (n < 1) throw std::domain_error("test_loss_standard: n must be >= 1");
    double sum = 0.0;
    for (double th : spec.theta) {
        if (th <= 0.0) continue;
        sum += th * binom_expect(n, spec.tau, th, [](double u) {
            return classifiers::sign0(u);
        });
    }
    return -spec.W * spec.tau * sum;
}

double test_loss_robust(const BernoulliSpec& spec, std::int64_t n) {
    return test_loss_standard(spec, n) + exact_gap(spec, n);
}

} // namespace rgap::bernoulli
