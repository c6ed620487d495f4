#include "robustgap/gaussian.hpp"

#include "robustgap/errors.hpp"
#include "robustgap/numerics.hpp"
#include "robustgap/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rgap::gaussian {

using numerics::heaviside;
using numerics::phi_gap;
using numerics::std_normal_cdf;

void GaussianSpec::validate() const {
    if (!(W > 0.0)) throw std::domain_error("GaussianSpec: W must be > 0");
    if (mu.empty() || mu.size() != sigma.size())
        throw std::domain_error("GaussianSpec: mu and sigma must be non-empty and equal length");
    for (double m : mu)
        if (!(m >= 0.0) || !std::isfinite(m))
            throw std::domain_error("GaussianSpec: mu coordinates must be finite and >= 0");
    for (double s : sigma)
        if (!(s > 0.0) || !std::isfinite(s))
            throw std::domain_error("GaussianSpec: sigma coordinates must be finite and > 0");
    if (!(eps >= 0.0) || !std::isfinite(eps))
        throw std::domain_error("GaussianSpec: eps must be finite and >= 0");
}

double exact_gap(const GaussianSpec& spec, std::int64_t n) {
    spec.validate();
    if (n < 1) throw std::domain_error("exact_gap: n must be >= 1");
    if (spec.eps == 0.0) return 0.0;
    const double sqn = std::sqrt(static_cast<double>(n));
    double sum = 0.0;
    for (std::size_t j = 0; j < spec.mu.size(); ++j) {
        if (spec.mu[j] <= 0.0) continue;  // sign(u_j) symmetric, contributes nothing
        sum += spec.mu[j] * phi_gap(sqn * spec.mu[j] / spec.sigma[j], spec.eps / spec.mu[j]);
    }
    return 2.0 * spec.W * sum;
}

double gap_limit(const GaussianSpec& spec) {
    spec.validate();
    double sum = 0.0;
    for (double m : spec.mu)
        if (m > 0.0) sum += m * heaviside(spec.eps / m - 1.0);
    return 2.0 * spec.W * sum;
}

RegimeReport regime(const GaussianSpec& spec) {
    spec.validate();
    double mmin = std::numeric_limits<double>::infinity();
    double mmax = 0.0;
    for (double m : spec.mu) {
        if (m <= 0.0) continue;
        mmin = std::min(mmin, m);
        mmax = std::max(mmax, m);
    }
    if (mmax == 0.0)
        throw degenerate_model_error("regime: all mean coordinates are zero");

    RegimeReport rep;
    rep.per_coordinate_critical.reserve(spec.mu.size());
    for (std::size_t j = 0; j < spec.mu.size(); ++j) {
        const double m = spec.mu[j];
        if (m <= 0.0) {
            rep.per_coordinate_critical.push_back(std::numeric_limits<double>::quiet_NaN());
        } else if (spec.eps <= 0.0) {
            rep.per_coordinate_critical.push_back(std::numeric_limits<double>::quiet_NaN());
        } else {
            rep.per_coordinate_critical.push_back(
                phase::gaussian_critical_n(spec.eps / m, spec.sigma[j] / m));
        }
    }

    const bool all_equal_eps = spec.eps > 0.0 && mmin == spec.eps && mmax == spec.eps;
    if (spec.eps > mmax || all_equal_eps) {
        // every per-coordinate ratio is >= 1: strictly increasing for all n
        rep.regime = Regime::Strong;
        return rep;
    }
    if (spec.eps < mmin) {
        rep.regime = Regime::Weak;
        double until = std::numeric_limits<double>::infinity();
        double from = 0.0;
        bool have_from = spec.eps > 0.0;
        for (std::size_t j = 0; j < spec.mu.size(); ++j) {
            const double m = spec.mu[j];
            if (m <= 0.0) continue;
            const double snr_inv = spec.sigma[j] / m;
            const double bound = std::max(1.5, -2.0 * std::log1p(-spec.eps / m));
            until = std::min(until, bound * snr_inv * snr_inv);
            if (have_from) from = std::max(from, rep.per_coordinate_critical[j]);
        }
        rep.increasing_until = until;
        if (have_from) rep.decreasing_from = from;  // eps == 0: gap identically zero
        return rep;
    }
    rep.regime = Regime::Indeterminate;
    return rep;
}

double test_loss_standard(const GaussianSpec& spec, std::int64_t n) {
    spec.validate();
    if (n < 1) throw std::domain_error("test_loss_standard: n must be >= 1");
    const double sqn = std::sqrt(static_cast<double>(n));
    double sum = 0.0;
    for (std::size_t j = 0; j < spec.mu.size(); ++j) {
        if (spec.mu[j] <= 0.0) continue;
        sum += spec.mu[j] * (2.0 * std_normal_cdf(sqn * spec.mu[j] / spec.sigma[j]) - 1.0);
    }
    return -spec.W * sum;
}

double test_loss_robust(const GaussianSpec& spec, std::int64_t n) {
    return test_loss_standard(spec, n) + exact_gap(spec, n);
}

} // namespace rgap::gaussian
