#include <cmath>

#include "doctest.h"
#include "fracblowup/errors.hpp"
#include "fracblowup/special.hpp"
#include "oracles.hpp"

using namespace fracblowup;

TEST_CASE("operator normalization at the classical half-Laplacian") {
    // A(1, 1/2) = 1/pi
    CHECK(fraclap_normalization(1, 0.5) == doctest::Approx(1.0 / M_PI).epsilon(1e-14));
}

TEST_CASE("torsion constant gamma(1, 1/2) = 1") {
    CHECK(torsion_constant(1, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("poisson constant at N=1, s=1/2 is 1/pi") {
    CHECK(poisson_constant(1, 0.5) == doctest::Approx(1.0 / M_PI).epsilon(1e-14));
}

TEST_CASE("green constant at N=1, s=1/2 is 1/(2 pi)") {
    CHECK(green_constant(1, 0.5) == doctest::Approx(0.5 / M_PI).epsilon(1e-14));
}

TEST_CASE("order outside (0,1) is rejected") {
    CHECK_THROWS_AS(green_constant(1, 1.0), DataError);
    CHECK_THROWS_AS(green_constant(1, 0.0), DataError);
    CHECK_THROWS_AS(green_constant(0, 0.5), DataError);
}

TEST_CASE("green inner integral matches brute quadrature across branches") {
    const double r0s[] = {1e-6, 1e-3, 0.1, 0.4, 1.0, 2.5, 10.0, 1e3, 1e6, 1e10};
    const double ss[] = {0.25, 0.45, 0.5, 0.55, 0.75, 0.9};
    const int dims[] = {1, 2, 3, 5};
    for (int N : dims) {
        for (double s : ss) {
            for (double r0 : r0s) {
                double got = green_inner_integral(r0, s, N);
                double want = oracles::green_inner_brute(r0, s, N);
                CAPTURE(N);
                CAPTURE(s);
                CAPTURE(r0);
                CHECK(got == doctest::Approx(want).epsilon(5e-11));
            }
        }
    }
}

TEST_CASE("exact logarithmic branch at N=1, s=1/2") {
    // I = log((1+sqrt(w0))^2/(1-w0)) with w0 = r0/(1+r0)
    double r0 = 7.3;
    double w0 = r0 / (1.0 + r0);
    double expected = std::log((1.0 + std::sqrt(w0)) * (1.0 + std::sqrt(w0)) /
                               (1.0 - w0));
    CHECK(green_inner_integral(r0, 0.5, 1) ==
          doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("complete integral equals the beta function when finite") {
    double s = 0.3;
    int N = 3;
    CHECK(green_inner_integral_complete(s, N) ==
          doctest::Approx(beta_complete(s, 0.5 * N - s)).epsilon(1e-14));
    // diverges when N <= 2s
    CHECK_THROWS_AS(green_inner_integral_complete(0.75, 1), DivergentIntegralError);
    // and the truncated integral still grows without bound in r0
    double a = green_inner_integral(1e4, 0.75, 1);
    double b = green_inner_integral(1e8, 0.75, 1);
    CHECK(b > 2.0 * a);
}
