#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "robustgap/bernoulli.hpp"
#include "robustgap/errors.hpp"
#include "robustgap/phase.hpp"

#include <cmath>

using namespace rgap;
using bernoulli::BernoulliSpec;

namespace {

BernoulliSpec fig_spec(double tau, double eps = 0.2) { return {1.0, {1.0}, tau, eps}; }

// Independent oracle: theta = 1, tau = tn/td, eps = en/ed, all interval and
// atom conditions decided in integer arithmetic, probabilities as exact
// rationals. g = 2 W tau (P[0<u<eps] - P[-eps<u<0] + (P[u=eps] - P[u=-eps])/2).
double exact_gap_rational(std::int64_t n, std::int64_t tn, std::int64_t td,
                          std::int64_t en, std::int64_t ed, double W = 1.0) {
    // S ~ Bin(n, (td + tn) / (2 td)), u = (2S - n)/n
    const std::int64_t pn = td + tn, pd = 2 * td;
    oracles::Rational pos{0, 1}, neg{0, 1}, atom_p{0, 1}, atom_m{0, 1};
    pos.den = neg.den = atom_p.den = atom_m.den = oracles::ipow(pd, n);
    for (std::int64_t S = 0; S <= n; ++S) {
        const std::int64_t num = 2 * S - n;  // u = num / n
        const auto pmf = oracles::binom_pmf_rational(n, pn, pd, S).num;
        const std::int64_t lhs = num * ed;   // compare u with en/ed: num*ed ? en*n
        const std::int64_t rhs = en * n;
        if (num > 0 && lhs < rhs) pos.num += pmf;
        if (num < 0 && -lhs < rhs) neg.num += pmf;
        if (num > 0 && lhs == rhs) atom_p.num += pmf;
        if (num < 0 && -lhs == rhs) atom_m.num += pmf;
    }
    const double tau = static_cast<double>(tn) / static_cast<double>(td);
    return 2.0 * W * tau *
           (oracles::to_double(pos) - oracles::to_double(neg) +
            0.5 * (oracles::to_double(atom_p) - oracles::to_double(atom_m)));
}

} // namespace

TEST_CASE("exact_gap examples") {
    CHECK(bernoulli::exact_gap(fig_spec(0.5, 0.2), 1) == 0.0);
    CHECK(bernoulli::exact_gap(fig_spec(0.5, 0.5), 3) == doctest::Approx(0.28125).epsilon(1e-13));
    CHECK(bernoulli::exact_gap(fig_spec(0.5, 0.0), 17) == 0.0);
}

TEST_CASE("exact_gap equals the rational enumeration oracle") {
    // tau in {1/2, 7/10, 1/5}, eps in {1/5, 1/2, 3/4, 1}; atoms land on the
    // lattice for many (n, eps) pairs here, which is the point
    const std::int64_t taus[][2] = {{1, 2}, {7, 10}, {1, 5}};
    const std::int64_t epss[][2] = {{1, 5}, {1, 2}, {3, 4}, {1, 1}};
    for (auto& t : taus)
        for (auto& e : epss)
            for (std::int64_t n = 1; n <= 25; ++n) {
                BernoulliSpec spec{1.0, {1.0},
                                   static_cast<double>(t[0]) / static_cast<double>(t[1]),
                                   static_cast<double>(e[0]) / static_cast<double>(e[1])};
                const double got = bernoulli::exact_gap(spec, n);
                const double want = exact_gap_rational(n, t[0], t[1], e[0], e[1]);
                CHECK(got == doctest::Approx(want).epsilon(1e-12));
            }
}

TEST_CASE("gap is non-negative on a grid") {
    for (double tau : {0.1, 0.2, 0.5, 0.7})
        for (double eps : {0.1, 0.2, 0.5})
            for (std::int64_t n = 1; n <= 120; ++n)
                CHECK(bernoulli::exact_gap(fig_spec(tau, eps), n) >= -1e-12);
}

TEST_CASE("strip center examples") {
    CHECK(bernoulli::strip_center(fig_spec(0.5, 0.0), 9) == 0.0);
    CHECK(bernoulli::strip_center(fig_spec(0.5, 0.2), 200000) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(bernoulli::strip_center(fig_spec(0.1, 0.2), 2000000) == doctest::Approx(0.2).epsilon(1e-6));
    // direct quadrature cross-check
    const double x = 0.5 * std::sqrt(48.0) / std::sqrt(0.75);
    CHECK(bernoulli::strip_center(fig_spec(0.5, 0.2), 48) ==
          doctest::Approx(2.0 * 0.5 * oracles::phi_gap_quadrature(x, 0.4)).epsilon(1e-12));
}

TEST_CASE("strip halfwidth examples") {
    CHECK(bernoulli::berry_esseen_c0() == doctest::Approx(0.40973218370239634).epsilon(1e-15));
    CHECK(bernoulli::strip_halfwidth(fig_spec(0.5), 1) ==
          doctest::Approx(2.3655898655623172).epsilon(1e-13));
    CHECK(bernoulli::strip_halfwidth(fig_spec(0.5), 400) ==
          doctest::Approx(0.5 * bernoulli::strip_halfwidth(fig_spec(0.5), 100)).epsilon(1e-13));
    CHECK(bernoulli::strip_halfwidth(fig_spec(0.001), 5) < 0.02);
}

TEST_CASE("strip containment on a small grid (full grid in acceptance)") {
    for (double tau : {0.2, 0.5})
        for (double eps : {0.1, 0.5})
            for (std::int64_t n = 1; n <= 60; ++n) {
                const auto spec = fig_spec(tau, eps);
                CHECK(std::fabs(bernoulli::exact_gap(spec, n) - bernoulli::strip_center(spec, n)) <=
                      bernoulli::strip_halfwidth(spec, n));
            }
}

TEST_CASE("gap_limit cases including the boundary atom") {
    CHECK(bernoulli::gap_limit(fig_spec(0.1, 0.2)) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(bernoulli::gap_limit(fig_spec(0.5, 0.2)) == 0.0);
    // eps == theta tau: Heaviside(0) = 1/2 gives tau d theta
    CHECK(bernoulli::gap_limit(fig_spec(0.2, 0.2 * 1.0)) == doctest::Approx(0.2).epsilon(1e-15));
    // large-n gap approaches the limit (within 0.05 at n = 1e4, fig 1b set)
    for (double tau : {0.1, 0.2, 0.5, 0.7}) {
        const auto spec = fig_spec(tau, 0.2);
        CHECK(std::fabs(bernoulli::exact_gap(spec, 10000) - bernoulli::gap_limit(spec)) <= 0.05);
    }
}

TEST_CASE("regime classification") {
    CHECK(bernoulli::regime(fig_spec(0.5, 0.2)).regime == Regime::Weak);
    CHECK(bernoulli::regime(fig_spec(0.7, 0.2)).regime == Regime::Weak);
    CHECK(bernoulli::regime(fig_spec(0.1, 0.2)).regime == Regime::Strong);
    CHECK(bernoulli::regime(fig_spec(0.2, 0.2)).regime == Regime::Strong);  // non-strict boundary

    const auto rep = bernoulli::regime(fig_spec(0.5, 0.25));
    REQUIRE(rep.regime == Regime::Weak);
    REQUIRE(rep.increasing_until.has_value());
    CHECK(*rep.increasing_until == doctest::Approx(4.5).epsilon(1e-12));
    REQUIRE(rep.decreasing_from.has_value());
    CHECK(*rep.decreasing_from ==
          doctest::Approx(phase::bernoulli_critical_n(0.5, 0.5)).epsilon(1e-12));

    BernoulliSpec mixed{1.0, {0.5, 2.0}, 0.5, 0.5};  // eps/tau = 1 between the thetas
    CHECK(bernoulli::regime(mixed).regime == Regime::Indeterminate);
    BernoulliSpec zero{1.0, {0.0}, 0.5, 0.2};
    CHECK_THROWS_AS(bernoulli::regime(zero), degenerate_model_error);
}

TEST_CASE("binomial asymmetry lemma on a small grid (exhaustive in acceptance)") {
    // P[X in (n/2, n/2 + delta)] >= P[X in (n/2 - delta, n/2)] for p > 1/2,
    // checked in exact rational arithmetic
    const std::int64_t ps[][2] = {{11, 20}, {7, 10}, {9, 10}};
    const std::int64_t ds[][2] = {{1, 2}, {1, 1}, {5, 2}};
    for (auto& p : ps)
        for (auto& d : ds)
            for (std::int64_t n = 1; n <= 12; ++n) {
                // bounds n/2 +- delta as rationals over 2*dd
                const auto up = oracles::binom_interval_rational(
                    n, p[0], p[1], n * d[1], 2 * d[1], n * d[1] + 2 * d[0], 2 * d[1]);
                const auto lo = oracles::binom_interval_rational(
                    n, p[0], p[1], n * d[1] - 2 * d[0], 2 * d[1], n * d[1], 2 * d[1]);
                CHECK(up.num >= lo.num);  // common denominator
            }
}

TEST_CASE("test losses") {
    CHECK(bernoulli::test_loss_standard(fig_spec(0.5), 1) == doctest::Approx(-0.25).epsilon(1e-15));
    // tau near 1, n odd: x = y theta almost surely, loss -> -W sum theta
    BernoulliSpec sharp{1.0, {1.0}, 0.9999, 0.2};
    CHECK(bernoulli::test_loss_standard(sharp, 3) == doctest::Approx(-0.9999).epsilon(1e-6));
    for (std::int64_t n : {1, 2, 9, 50}) {
        const auto spec = fig_spec(0.5, 0.3);
        const double diff =
            bernoulli::test_loss_robust(spec, n) - bernoulli::test_loss_standard(spec, n);
        CHECK(std::fabs(diff - bernoulli::exact_gap(spec, n)) <= 1e-12);
    }
}
