#include "fracblowup/special.hpp"

#include <cmath>
#include <string>

#include "fracblowup/errors.hpp"

namespace fracblowup {

namespace {
void require_order(int dim, double s) {
    if (dim < 1) throw DataError("dimension must be >= 1");
    if (!(s > 0.0 && s < 1.0))
        throw DataError("fractional order s must lie in (0,1), got " +
                        std::to_string(s));
}
}  // namespace

double fraclap_normalization(int dim, double s) {
    require_order(dim, s);
    return std::pow(4.0, s) * s *
           std::exp(std::lgamma(0.5 * dim + s) - std::lgamma(1.0 - s)) /
           std::pow(M_PI, 0.5 * dim);
}

double green_constant(int dim, double s) {
    require_order(dim, s);
    return std::exp(std::lgamma(0.5 * dim) - 2.0 * std::lgamma(s)) /
           (std::pow(4.0, s) * std::pow(M_PI, 0.5 * dim));
}

double torsion_constant(int dim, double s) {
    require_order(dim, s);
    return std::exp(std::lgamma(0.5 * dim) - std::lgamma(0.5 * dim + s) -
                    std::lgamma(1.0 + s)) /
           std::pow(4.0, s);
}

double poisson_constant(int dim, double s) {
    require_order(dim, s);
    return std::exp(std::lgamma(0.5 * dim)) * std::sin(M_PI * s) /
           std::pow(M_PI, 0.5 * dim + 1.0);
}

double beta_complete(double a, double b) {
    if (!(a > 0.0 && b > 0.0)) throw DataError("beta_complete needs a,b > 0");
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

namespace {

constexpr int kMaxTerms = 400;
constexpr double kSeriesTol = 1e-15;

// int_0^{x} w^{a-1} (1-w)^{b-1} dw as a series around w = 0; geometric
// convergence for x bounded away from 1.
double incomplete_beta_head(double x, double a, double b) {
    double ck = 1.0, sum = std::pow(x, a) / a, xk = std::pow(x, a);
    for (int k = 1; k < kMaxTerms; ++k) {
        ck *= (k - b) / k;
        xk *= x;
        double term = ck * xk / (a + k);
        sum += term;
        if (std::abs(term) < kSeriesTol * std::abs(sum)) return sum;
    }
    throw QuadratureError("incomplete beta head series stalled", kSeriesTol);
}

}  // namespace

double green_inner_integral_complete(double s, int dim) {
    double b = 0.5 * dim - s;
    if (b <= 0.0)
        throw DivergentIntegralError(
            "I(inf; s, N) diverges for N <= 2s (N=" + std::to_string(dim) +
            ", s=" + std::to_string(s) + ")");
    return beta_complete(s, b);
}

double green_inner_integral(double r0, double s, int dim) {
    require_order(dim, s);
    if (!(r0 > 0.0)) return 0.0;
    const double a = s;
    const double b = 0.5 * dim - s;
    const double w0 = r0 / (1.0 + r0);
    const double v0 = 1.0 / (1.0 + r0);  // = 1 - w0, computed without cancellation

    // logarithmic degeneracy 2s = N: the substituted integrand is
    // w^{-1/2}/(1-w) with exact primitive
    if (dim == 1 && std::abs(s - 0.5) < 1e-9) {
        double sw = std::sqrt(w0);
        return std::log((1.0 + sw) * (1.0 + sw) / v0);
    }

    if (w0 <= 0.7) return incomplete_beta_head(w0, a, b);

    if (b > 0.05) {
        // complement around w = 1
        return beta_complete(a, b) - incomplete_beta_head(v0, b, a);
    }

    // b <= 0.05 (N=1 with s near or above 1/2): split at w = 1/2.
    double head = incomplete_beta_head(0.5, a, b);
    // S = int_{v0}^{1/2} v^{b-1} (1-v)^{a-1} dv, series in v around 0
    double dk = 1.0;
    double lr = std::log(0.5 / v0);
    double s0 = std::pow(v0, b) * std::expm1(b * lr) / b;  // stable k=0 term
    double sum = s0;
    double half_pow = std::pow(0.5, b), v0_pow = std::pow(v0, b);
    for (int k = 1; k < kMaxTerms; ++k) {
        dk *= (k - a) / k;
        half_pow *= 0.5;
        v0_pow *= v0;
        double term = dk * (half_pow - v0_pow) / (b + k);
        sum += term;
        if (std::abs(term) < kSeriesTol * std::abs(sum)) break;
        if (k == kMaxTerms - 1)
            throw QuadratureError("incomplete beta split series stalled",
                                  kSeriesTol);
    }
    return head + sum;
}

}  // namespace fracblowup
