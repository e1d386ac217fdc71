#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "fracblowup/errors.hpp"
#include "fracblowup/nonlinearity.hpp"
#include "fracblowup/quadrature.hpp"
#include "oracles.hpp"

using namespace fracblowup;

TEST_CASE("f vanishes at zero and matches closed forms") {
    CHECK(eval_f(NonlinearityModel::power(2.5), 0.0) == 0.0);
    CHECK(eval_f(NonlinearityModel::power(3.0), 2.0) == doctest::Approx(8.0));
    // ln(1 + (e-1)) = 1
    double t = M_E - 1.0;
    CHECK(eval_f(NonlinearityModel::power_log(2.0, 1.0), t) ==
          doctest::Approx(t * t).epsilon(1e-14));
}

TEST_CASE("antiderivative against a fixed high-order quadrature oracle") {
    NonlinearityModel cube = NonlinearityModel::power(3.0);
    CHECK(eval_F(cube, 2.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(eval_F(cube, 0.0) == 0.0);
    NonlinearityModel plog = NonlinearityModel::power_log(2.0, 1.0);
    CHECK(eval_F(plog, 0.0) == 0.0);
    double want = oracles::integrate_gl(
        [&](double tau) { return tau * tau * std::log1p(tau); }, 0.0, 1.0);
    CHECK(eval_F(plog, 1.0) == doctest::Approx(want).epsilon(1e-10));
    // the oracle comparison across a grid, 1e-10 relative
    for (double t : log_spaced(1e-2, 1e2, 9)) {
        double num = oracles::integrate_gl(
            [&](double tau) { return eval_f(plog, tau); }, 0.0, t, 96, 24);
        CHECK(eval_F(plog, t) == doctest::Approx(num).epsilon(1e-10));
    }
}

TEST_CASE("growth envelope of pure powers is tight") {
    GrowthEnvelope env = estimate_growth_envelope(NonlinearityModel::power(2.5));
    CHECK(env.m == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(env.M == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("growth envelope of the log-weighted lower-critical example") {
    double s = 0.5, alpha = 1.5;
    NonlinearityModel m = NonlinearityModel::power_log(1.0 + 2.0 * s, alpha);
    // ratio formula: 1+2s + alpha t/((1+t) ln(1+t))
    for (double t : {1e-3, 1.0, 50.0}) {
        double want = 1.0 + 2.0 * s +
                      alpha * t / ((1.0 + t) * std::log1p(t));
        double got = t * eval_f_prime(m, t) / eval_f(m, t);
        CHECK(got == doctest::Approx(want).epsilon(1e-10));
    }
    GrowthEnvelope env = estimate_growth_envelope(m);
    CHECK(env.m > 2.0 * s - 1e-3);     // -> p-1 = 2s from below... from above
    CHECK(env.M < 2.0 * s + alpha + 1e-3);
    CHECK(env.M > env.m);
}

TEST_CASE("linear f violates the envelope hypothesis") {
    CHECK_THROWS_AS(estimate_growth_envelope(NonlinearityModel::power(1.0)),
                    HypothesisViolation);
}

TEST_CASE("monotone scaling bounds") {
    NonlinearityModel cube = NonlinearityModel::power(3.0);
    GrowthEnvelope env = estimate_growth_envelope(cube);
    auto grid = log_spaced(1e-2, 1e2, 64);
    ScalingReport rep = check_monotone_scaling(cube, env, 2.0, grid);
    CHECK(rep.max_rel_violation <= 1e-12);  // equality for pure powers
    NonlinearityModel plog = NonlinearityModel::power_log(2.0, 1.0);
    GrowthEnvelope env2 = estimate_growth_envelope(plog);
    ScalingReport rep2 = check_monotone_scaling(plog, env2, 2.0, grid);
    CHECK(rep2.max_rel_violation <= 1e-6);
    ScalingReport degenerate = check_monotone_scaling(cube, env, 1.0, grid);
    CHECK(degenerate.max_rel_violation == 0.0);
}

TEST_CASE("linear bound witnesses") {
    auto sqrt_bound = check_linear_bound(NonlinearityModel::power(0.5));
    REQUIRE(sqrt_bound.has_value());
    CHECK_FALSE(sqrt_bound->range_limited);
    // witnesses actually bound f on samples
    for (double t : log_spaced(1e-3, 1e6, 50))
        CHECK(std::sqrt(t) <= sqrt_bound->a + sqrt_bound->b * t + 1e-9);

    auto cubic = check_linear_bound(NonlinearityModel::power(3.0), {1e-3, 100.0});
    REQUIRE(cubic.has_value());
    CHECK(cubic->range_limited);

    // t / ln(1+t) is sublinear at infinity
    auto sub = check_linear_bound(NonlinearityModel::power_log(1.0, -1.0));
    REQUIRE(sub.has_value());
    CHECK_FALSE(sub->range_limited);

    // f(t) = t admits a + t globally
    auto lin = check_linear_bound(NonlinearityModel::power(1.0));
    REQUIRE(lin.has_value());
    CHECK_FALSE(lin->range_limited);
}

TEST_CASE("integrated growth bounds on the sampled range") {
    for (auto model : {NonlinearityModel::power(2.5),
                       NonlinearityModel::power_log(3.0, 1.0)}) {
        GrowthEnvelope env = estimate_growth_envelope(model);
        double f1 = eval_f(model, 1.0);
        for (double t : log_spaced(1.0, 1e4, 24)) {
            CHECK(eval_f(model, t) >=
                  f1 * std::pow(t, 1.0 + env.m) * (1.0 - 1e-8));
            CHECK(eval_F(model, t) >=
                  f1 * std::pow(t, 2.0 + env.m) / (2.0 + env.m) * (1.0 - 1e-8));
            double ratio = t * eval_f(model, t) / eval_F(model, t);
            CHECK(ratio >= 2.0 + env.m - 1e-6 * ratio);
            CHECK(ratio <= 2.0 + env.M + 1e-6 * ratio);
        }
    }
}

TEST_CASE("tabulated model interpolates monotonically and guards its range") {
    std::vector<double> t, f;
    for (double x : log_spaced(1e-3, 1e3, 120)) {
        t.push_back(x);
        f.push_back(x * x);  // sampled square
    }
    NonlinearityModel tab = NonlinearityModel::tabulated(t, f);
    CHECK_FALSE(tab.f_prime_available);
    for (double x : log_spaced(2e-3, 5e2, 17))
        CHECK(eval_f(tab, x) == doctest::Approx(x * x).epsilon(1e-6));
    CHECK(eval_f(tab, 0.0) == 0.0);
    CHECK_THROWS_AS(eval_f(tab, 1e-6), OutOfRangeError);
    CHECK_THROWS_AS(eval_f(tab, 1e6), OutOfRangeError);
    GrowthEnvelope env = estimate_growth_envelope(tab, {1e-2, 1e2}, 256);
    CHECK(env.m == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(env.M == doctest::Approx(1.0).epsilon(1e-3));

    std::vector<double> bad_f = f;
    bad_f[60] = bad_f[59] * 0.5;  // break monotonicity
    CHECK_THROWS_AS(NonlinearityModel::tabulated(t, bad_f), HypothesisViolation);
}

TEST_CASE("tabulated csv round trip") {
    std::string path = "tab_model_test.csv";
    {
        std::ofstream out(path);
        out << "# t,f\n";
        for (double x : log_spaced(1e-2, 1e2, 64)) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, std::pow(x, 1.5));
            out << buf;
        }
    }
    NonlinearityModel tab = NonlinearityModel::tabulated_from_csv(path);
    CHECK(eval_f(tab, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
    std::remove(path.c_str());
}
