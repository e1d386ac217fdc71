#include <cmath>

#include "doctest.h"
#include "fracblowup/errors.hpp"
#include "fracblowup/quadrature.hpp"

using namespace fracblowup;

TEST_CASE("adaptive quadrature on a smooth integrand") {
    QuadResult r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0,
                                      M_PI, 1e-12);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("adaptive quadrature resolves an integrable endpoint singularity") {
    // int_0^1 x^{-1/2} dx = 2
    QuadResult r = integrate_adaptive(
        [](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; }, 0.0, 1.0,
        1e-9, 0.0, 200000);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("graded panels handle the same singularity cheaply") {
    double v = gauss_graded([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                            0.0, 60, 8);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("integral to infinity with power tail") {
    // int_1^inf t^-3 dt = 1/2
    QuadResult r = integrate_to_infinity(
        [](double t) { return std::pow(t, -3.0); }, 1.0, 1e-11, 1e8);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-9));
    // diverging tails are reported, not silently truncated
    CHECK_THROWS_AS(
        integrate_to_infinity([](double t) { return 1.0 / t; }, 1.0, 1e-10, 1e6),
        DivergentIntegralError);
}

TEST_CASE("power-log tail fit recovers both exponents") {
    auto g = [](double t) {
        return 3.7 * std::pow(t, -1.0) * std::pow(std::log(t), -2.5);
    };
    PowerLogFit fit = fit_power_log_tail(g, 1e4, 1e10, 48);
    CHECK(fit.exponent == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(fit.log_exponent == doctest::Approx(-2.5).epsilon(1e-4));
    CHECK(fit.rms_residual < 1e-8);
}

TEST_CASE("pure power fit is exact") {
    PowerLogFit fit = fit_power_tail(
        [](double t) { return 2.0 * std::pow(t, -1.75); }, 1e3, 1e9, 32);
    CHECK(fit.exponent == doctest::Approx(-1.75).epsilon(1e-12));
}

TEST_CASE("log_spaced endpoints are exact") {
    auto v = log_spaced(1e-3, 1e3, 7);
    CHECK(v.front() == 1e-3);
    CHECK(v.back() == 1e3);
    CHECK(v[3] == doctest::Approx(1.0).epsilon(1e-12));
}
