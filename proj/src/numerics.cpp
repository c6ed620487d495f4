#include "robustgap/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rgap::numerics {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite input");
}

} // namespace

double std_normal_cdf(double x) {
    require_finite(x, "std_normal_cdf");
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

double std_normal_cdf_c(double x) {
    require_finite(x, "std_normal_cdf_c");
    return 0.5 * std::erfc(x * kInvSqrt2);
}

double std_normal_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double phi_gap(double x, double delta) {
    require_finite(x, "phi_gap");
    require_finite(delta, "phi_gap");
    if (x < 0.0) throw std::domain_error("phi_gap: x must be >= 0");
    if (delta <= 0.0) throw std::domain_error("phi_gap: delta must be > 0");
    const double c = std_normal_cdf_c(x);
    return (std_normal_cdf_c(x * (1.0 + delta)) - c)
         + (std_normal_cdf_c(x * (1.0 - delta)) - c);
}

double h_poly(double a, double delta) {
    require_finite(a, "h_poly");
    require_finite(delta, "h_poly");
    if (a < 1.0) throw std::domain_error("h_poly: a must be >= 1");
    if (delta <= 0.0) throw std::domain_error("h_poly: delta must be > 0");
    const double lna = std::log(a);
    const double e1 = 2.0 * delta * lna;
    const double e2 = 0.5 * delta * (delta + 2.0) * lna;
    if (e1 <= 700.0 && e2 <= 700.0)
        return -delta + (delta - 1.0) * std::exp(e1) + 2.0 * std::exp(e2) - 1.0;
    if (delta >= 1.0) {
        // both power terms non-negative: h -> +inf, no cancellation
        return std::numeric_limits<double>::max();
    }
    // delta < 1: factor out a^(2*delta); e2 < e1 here, so the ratio is tame
    const double t = 2.0 * std::exp(e2 - e1) - (1.0 - delta);
    return t * std::exp(std::min(e1, 700.0)) - (1.0 + delta);
}

double heaviside(double x) {
    require_finite(x, "heaviside");
    if (x > 0.0) return 1.0;
    if (x < 0.0) return 0.0;
    return 0.5;
}

namespace detail {

// exact values of log(n!) - ((n+1/2) log n - n + log(2 pi)/2) for small n
const double kStirlerrTab[16] = {
    0.0,
    0.08106146679532725821967,
    0.04134069595540929409382,
    0.02767792568499833914879,
    0.02079067210376509311152,
    0.01664469118982119216319,
    0.01387612882307074799875,
    0.01189670994589177009506,
    0.01041126526197209649748,
    0.009255462182712732917729,
    0.008330563433362871256469,
    0.007573675487951840794972,
    0.006942840107209529865664,
    0.00640899418800420706844,
    0.005951370112758847735624,
    0.005554733551962801371039,
};

double stirlerr(std::int64_t n) {
    if (n <= 15) return kStirlerrTab[n];
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    const double S0 = 1.0 / 12.0, S1 = 1.0 / 360.0, S2 = 1.0 / 1260.0,
                 S3 = 1.0 / 1680.0, S4 = 1.0 / 1188.0;
    const double dn = static_cast<double>(n);
    if (n > 500) return (S0 - S1 / nn) / dn;
    if (n > 80) return (S0 - (S1 - S2 / nn) / nn) / dn;
    if (n > 35) return (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / dn;
    return (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / dn;
}

double bd0(double x, double np) {
    if (std::fabs(x - np) < 0.1 * (x + np)) {
        const double v = (x - np) / (x + np);
        double s = (x - np) * v;
        double ej = 2.0 * x * v;
        const double v2 = v * v;
        for (int j = 1;; ++j) {
            ej *= v2;
            const double s1 = s + ej / (2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
    }
    return x * std::log(x / np) + np - x;
}

} // namespace detail

double binom_pmf(std::int64_t n, double p, std::int64_t k) {
    if (n < 1) throw std::domain_error("binom_pmf: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binom_pmf: p must be in [0,1]");
    if (k < 0 || k > n) return 0.0;
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == n ? 1.0 : 0.0;
    if (k == 0) return std::pow(1.0 - p, static_cast<double>(n));
    if (k == n) return std::pow(p, static_cast<double>(n));
    const double dn = static_cast<double>(n), dk = static_cast<double>(k);
    const double lc = detail::stirlerr(n) - detail::stirlerr(k) - detail::stirlerr(n - k)
                    - detail::bd0(dk, dn * p) - detail::bd0(dn - dk, dn * (1.0 - p));
    const double lf = std::log(2.0 * M_PI) + std::log(dk) + std::log1p(-dk / dn);
    return std::exp(lc - 0.5 * lf);
}

double poisson_pmf(double lambda, std::int64_t k) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::domain_error("poisson_pmf: lambda must be > 0");
    if (k < 0) return 0.0;
    if (k == 0) return std::exp(-lambda);
    const double dk = static_cast<double>(k);
    return std::exp(-detail::stirlerr(k) - detail::bd0(dk, lambda))
         / std::sqrt(2.0 * M_PI * dk);
}

} // namespace rgap::numerics
