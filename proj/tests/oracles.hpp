#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>

// Independent oracles used only by tests. Nothing here may call into the
// library's implementation paths it is checking.

namespace oracles {

// ---- standard normal CDF by composite Gauss-Legendre quadrature ----------
//
// Phi(x) = 1/2 + integral_0^x pdf(t) dt, 16-point rule on 256 panels over
// [0, |x|]; panel error ~ (b-a)^(2k+1), far below 1e-16 for |x| <= 12.

inline double normal_cdf_quadrature(double x) {
    static const double node[8] = {
        0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
        0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499,
    };
    static const double weight[8] = {
        0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
        0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541,
    };
    const double ax = std::fabs(x);
    const double upper = std::min(ax, 12.0);  // beyond 12 the tail is < 2e-33
    const int panels = 256;
    const double h = upper / panels;
    const double inv_sqrt_2pi = 0.3989422804014326779399461;
    double integral = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        const double half = 0.5 * h;
        double acc = 0.0;
        for (int i = 0; i < 8; ++i) {
            const double t1 = mid + half * node[i];
            const double t2 = mid - half * node[i];
            acc += weight[i] * (std::exp(-0.5 * t1 * t1) + std::exp(-0.5 * t2 * t2));
        }
        integral += acc * half;
    }
    integral *= inv_sqrt_2pi;
    return x >= 0.0 ? 0.5 + integral : 0.5 - integral;
}

inline double phi_gap_quadrature(double x, double delta) {
    return 2.0 * normal_cdf_quadrature(x) - normal_cdf_quadrature(x * (1.0 + delta))
         - normal_cdf_quadrature(x * (1.0 - delta));
}

// ---- exact rational binomial arithmetic -----------------------------------

using bigint = boost::multiprecision::cpp_int;

struct Rational {
    bigint num;
    bigint den;  // > 0
};

inline bigint binomial_coeff(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    bigint c = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        c *= n - i;
        c /= i + 1;
    }
    return c;
}

inline bigint ipow(bigint base, std::int64_t e) {
    bigint r = 1;
    while (e-- > 0) r *= base;
    return r;
}

/// pmf of Bin(n, pn/pd) at k, as an exact rational with denominator pd^n.
inline Rational binom_pmf_rational(std::int64_t n, std::int64_t pn, std::int64_t pd,
                                   std::int64_t k) {
    if (k < 0 || k > n) return {0, 1};
    Rational r;
    r.num = binomial_coeff(n, k) * ipow(pn, k) * ipow(bigint(pd - pn), n - k);
    r.den = ipow(pd, n);
    return r;
}

/// Exact sum of pmf over integers k with lo < k < hi (strict, real bounds
/// given as rationals lo = ln/ld, hi = hn/hd); denominator pd^n.
inline Rational binom_interval_rational(std::int64_t n, std::int64_t pn, std::int64_t pd,
                                        std::int64_t ln, std::int64_t ld,
                                        std::int64_t hn, std::int64_t hd) {
    Rational acc{0, ipow(pd, n)};
    for (std::int64_t k = 0; k <= n; ++k) {
        // lo < k  <=>  ln < k*ld  (ld > 0); k < hi  <=>  k*hd < hn
        if (ln < k * ld && k * hd < hn)
            acc.num += binomial_coeff(n, k) * ipow(pn, k) * ipow(bigint(pd - pn), n - k);
    }
    return acc;
}

/// Nearly correctly rounded double of an exact non-negative rational: scale
/// so the integer quotient carries >= 128 bits, then one ldexp. Conversion
/// error ~2^-128, far below the double rounding itself.
inline double to_double(const Rational& r) {
    if (r.num == 0) return 0.0;
    const long bits_num = static_cast<long>(boost::multiprecision::msb(r.num));
    const long bits_den = static_cast<long>(boost::multiprecision::msb(r.den));
    long shift = 128 + bits_den - bits_num;
    if (shift < 0) shift = 0;
    const bigint scaled = (r.num << shift) / r.den;
    const double d = scaled.convert_to<double>();
    return std::ldexp(d, static_cast<int>(-shift));
}

// ---- small deterministic generator for property tests ---------------------

struct SplitMix64 {
    std::uint64_t s;
    explicit SplitMix64(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double unit() { return (next() >> 11) * 0x1p-53; }
    double uniform(double a, double b) { return a + (b - a) * unit(); }
    // Box-Muller; fine for generating test instances
    double normal() {
        const double u1 = std::max(unit(), 1e-300);
        const double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }
};

} // namespace oracles
