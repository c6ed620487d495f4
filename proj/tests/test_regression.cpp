#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "robustgap/errors.hpp"
#include "robustgap/regression.hpp"

#include <cmath>

using namespace rgap;
using regression::Dataset;
using regression::InputDist;
using regression::RegressionSpec;

namespace {

double objective(const std::vector<double>& xs, const std::vector<double>& ys, double eps,
                 double w) {
    double F = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double t = std::fabs(ys[i] - w * xs[i]) + eps * std::fabs(w);
        F += t * t;
    }
    return F;
}

} // namespace

TEST_CASE("ols_fit basics") {
    CHECK(regression::ols_fit({{{1.0}, {2.0}}, {2.0, 4.0}}) == std::vector<double>{2.0});
    CHECK(regression::ols_fit({{{1.0}, {1.0}}, {1.0, 3.0}}) == std::vector<double>{2.0});
    CHECK(regression::ols_fit({{{1.0}, {2.0}}, {0.0, 0.0}}) == std::vector<double>{0.0});
    // identical columns make X^T X singular
    Dataset bad{{{1.0, 1.0}, {2.0, 2.0}}, {1.0, 2.0}};
    CHECK_THROWS_AS(regression::ols_fit(bad), numeric_error);
    // 2-d sanity: orthogonal design recovers each coordinate
    Dataset ortho{{{1.0, 0.0}, {0.0, 2.0}}, {3.0, 4.0}};
    const auto w = regression::ols_fit(ortho);
    CHECK(w[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(w[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("robust_fit_1d closed-form cases") {
    CHECK(regression::robust_fit_1d({1.0}, {2.0}, 0.5) == 2.0);
    CHECK(regression::robust_fit_1d({1.0}, {2.0}, 1.5) == 0.0);
    CHECK(regression::robust_fit_1d({1.0, 1.0}, {1.0, 3.0}, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
    // all x zero, eps = 0, nonzero y: objective flat, tie rule returns 0
    CHECK(regression::robust_fit_1d({0.0, 0.0}, {1.0, -2.0}, 0.0) == 0.0);
    CHECK(regression::robust_fit_1d({0.0, 0.0}, {1.0, -2.0}, 0.7) == 0.0);
}

TEST_CASE("robust_fit_1d beats a 1e6-point grid on random instances") {
    oracles::SplitMix64 gen(21);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 1 + gen.next() % 10;
        std::vector<double> xs(n), ys(n);
        for (auto& v : xs) v = gen.normal();
        for (auto& v : ys) v = gen.normal();
        const double eps = gen.uniform(0.0, 3.0);
        const double w = regression::robust_fit_1d(xs, ys, eps);
        const double Fw = objective(xs, ys, eps, w);
        double Fbest = Fw;
        for (int i = 0; i <= 100000; ++i) {  // coarser grid here; 1e6 in acceptance
            const double g = -10.0 + 20.0 * i / 100000.0;
            Fbest = std::min(Fbest, objective(xs, ys, eps, g));
        }
        CHECK(Fw <= Fbest + 1e-9 * (1.0 + std::fabs(Fbest)));
        // subgradient check at the returned point
        const double h = 1e-7;
        CHECK(objective(xs, ys, eps, w - h) >= Fw - 1e-9 * (1.0 + Fw));
        CHECK(objective(xs, ys, eps, w + h) >= Fw - 1e-9 * (1.0 + Fw));
    }
}

TEST_CASE("eps = 0 equals least squares exactly") {
    oracles::SplitMix64 gen(23);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + gen.next() % 9;
        Dataset data;
        std::vector<double> xs(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = gen.normal();
            data.xs.push_back({xs[i]});
            data.ys.push_back(gen.normal());
        }
        const double wr = regression::robust_fit_1d(xs, data.ys, 0.0);
        const double wo = regression::ols_fit(data)[0];
        CHECK(std::fabs(wr - wo) <= 1e-10 * (1.0 + std::fabs(wo)));
    }
}

TEST_CASE("n = 1 agreement with the closed form, including the flat boundary") {
    CHECK(regression::wrob1_closed_form(1.0, 2.0, 0.5) == 2.0);
    CHECK(regression::wrob1_closed_form(1.0, 2.0, 1.5) == 0.0);
    CHECK(regression::wrob1_closed_form(-2.0, 4.0, 1.0) == -2.0);
    CHECK(regression::wrob1_closed_form(0.0, 3.0, 0.0) == 0.0);
    oracles::SplitMix64 gen(29);
    for (int rep = 0; rep < 500; ++rep) {
        const double x = gen.normal(), y = gen.normal();
        const double eps = gen.uniform(0.0, 2.0);
        CHECK(regression::robust_fit_1d({x}, {y}, eps) == regression::wrob1_closed_form(x, y, eps));
    }
    // |x| == eps exactly: objective is flat on [0, y/x]; tie rule picks 0
    CHECK(regression::robust_fit_1d({0.5}, {1.0}, 0.5) == 0.0);
    CHECK(regression::wrob1_closed_form(0.5, 1.0, 0.5) == 0.0);
}

TEST_CASE("robust_fit decouples per coordinate") {
    Dataset data{{{1.0, 1.0}, {2.0, 2.0}, {-1.0, -1.0}}, {1.5, 3.0, -0.5}};
    const auto w = regression::robust_fit(data, 0.4);
    const double w1 = regression::robust_fit_1d({1.0, 2.0, -1.0}, {1.5, 3.0, -0.5}, 0.4);
    CHECK(w[0] == w1);
    CHECK(w[1] == w1);
    CHECK(regression::robust_fit({{{3.0}}, {6.0}}, 1.0) == std::vector<double>{2.0});
}

TEST_CASE("population second moment") {
    CHECK(regression::population_second_moment(InputDist::StandardNormal) == 1.0);
    CHECK(regression::population_second_moment(InputDist::ShiftedPoisson, 5.0) == 41.0);
    CHECK(regression::population_second_moment(InputDist::ShiftedPoisson, 1e-12) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("g1_poisson_exact values and properties") {
    CHECK(regression::g1_poisson_exact(5.0, 1.0, 1.0) == 0.0);
    CHECK(regression::g1_poisson_exact(5.0, 1.0, 1.5) == 0.0);  // only k = 1, weight 0
    // frozen from exact Poisson pmf evaluation
    CHECK(regression::g1_poisson_exact(5.0, 2.0, 2.5) == doctest::Approx(6.0085642364344653).epsilon(1e-13));
    CHECK(regression::g1_poisson_exact(5.0, 1.0, 2.5) == doctest::Approx(1.0359593511093906).epsilon(1e-13));
    double prev = -1.0;
    for (double eps = 0.0; eps <= 10.0; eps += 0.125) {
        const double g = regression::g1_poisson_exact(5.0, 2.0, eps);
        CHECK(g >= prev);
        CHECK(g <= 41.0 * 4.0);
        prev = g;
    }
    CHECK_THROWS_AS(regression::g1_poisson_exact(5.0, 0.5, 2.0), std::domain_error);
}

TEST_CASE("test_loss exact forms") {
    RegressionSpec spec{{1.0}, 1.0, InputDist::StandardNormal, 5.0, 0.0};
    CHECK(regression::test_loss({1.0}, spec) == 1.0);
    CHECK(regression::test_loss({3.0}, spec) == doctest::Approx(5.0).epsilon(1e-15));
    RegressionSpec pois{{1.0}, 1.0, InputDist::ShiftedPoisson, 5.0, 0.0};
    CHECK(regression::test_loss({2.0}, pois) == doctest::Approx(42.0).epsilon(1e-15));
    RegressionSpec two{{1.0, -1.0}, 0.5, InputDist::StandardNormal, 5.0, 0.0};
    CHECK(regression::test_loss({2.0, 0.0}, two) == doctest::Approx(1.0 + 1.0 + 0.5).epsilon(1e-15));
}

TEST_CASE("mc_scaled_gap determinism, eps = 0, and CRN prefix property") {
    RegressionSpec spec{{1.0}, 1.0, InputDist::ShiftedPoisson, 5.0, 1.5};
    const auto a = regression::mc_scaled_gap(spec, 4, 5001, 7, 1);
    const auto b = regression::mc_scaled_gap(spec, 4, 5001, 7, 6);
    CHECK(a.mean == b.mean);
    CHECK(a.std_err == b.std_err);
    CHECK(a.rejects == 0);

    RegressionSpec zero = spec;
    zero.eps = 0.0;
    const auto z = regression::mc_scaled_gap(zero, 4, 2000, 7, 1);
    CHECK(z.mean == 0.0);
    CHECK(z.std_err == 0.0);
}

TEST_CASE("mc_scaled_gap matches g1 exact for the Poisson model at n = 1") {
    RegressionSpec spec{{1.0}, 1.0, InputDist::ShiftedPoisson, 5.0, 1.5};
    const auto e = regression::mc_scaled_gap(spec, 1, 200000, 2026, 0);
    CHECK(std::fabs(41.0 * e.mean - regression::g1_poisson_exact(5.0, 1.0, 1.5)) <=
          4.0 * 41.0 * e.std_err);
}

TEST_CASE("standard-normal gap increases with n even for small eps") {
    RegressionSpec spec{{1.0}, 1.0, InputDist::StandardNormal, 5.0, 0.05};
    const auto g5 = regression::mc_scaled_gap(spec, 5, 100000, 31, 0);
    const auto g20 = regression::mc_scaled_gap(spec, 20, 100000, 31, 0);
    CHECK(g20.mean > g5.mean);
}

TEST_CASE("mc_scaled_losses equals gap cellwise") {
    RegressionSpec spec{{1.0}, 1.0, InputDist::ShiftedPoisson, 5.0, 3.0};
    const auto gap = regression::mc_scaled_gap(spec, 6, 20000, 5, 1);
    const auto [ls, lr] = regression::mc_scaled_losses(spec, 6, 20000, 5, 1);
    CHECK(lr.mean - ls.mean == doctest::Approx(gap.mean).epsilon(1e-10));
}
