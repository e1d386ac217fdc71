#pragma once

#include <functional>
#include <vector>

namespace fracblowup {

/// Gauss-Legendre nodes/weights on [-1,1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached rule of the given order (computed once, thread-safe).
const GaussRule& gauss_rule(int order);

using Integrand = std::function<double(double)>;

/// Fixed-order Gauss-Legendre on [a,b].
double gauss(const Integrand& f, double a, double b, int order = 16);

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Adaptive bisection quadrature on a finite interval. Error per panel is
/// estimated from the difference of two Gauss orders.
QuadResult integrate_adaptive(const Integrand& f, double a, double b,
                              double rel_tol = 1e-10, double abs_tol = 0.0,
                              int max_panels = 20000);

/// Adaptive quadrature on [a, +inf) for integrands with power-law decay:
/// maps the tail through t = a e^y and fits the residual tail exponent.
QuadResult integrate_to_infinity(const Integrand& f, double a,
                                 double rel_tol = 1e-10,
                                 double tail_cutoff = 1e12);

/// Geometrically graded composite Gauss toward the endpoint `toward`
/// of [a,b] (resolves integrable endpoint singularities).
double gauss_graded(const Integrand& f, double a, double b, double toward,
                    int levels = 48, int order = 6);

/// n log-spaced points in [lo, hi], inclusive.
std::vector<double> log_spaced(double lo, double hi, int n);

/// Least-squares fit of ln g(t) ~ c + e ln t + lam ln(ln t) on a log grid.
/// Recovers exactly the tail behavior of power and power-log integrands;
/// `lam` discriminates convergence when the pure power exponent sits at the
/// critical value.
struct PowerLogFit {
    double c = 0.0;
    double exponent = 0.0;      // e
    double log_exponent = 0.0;  // lam
    double rms_residual = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    int n_samples = 0;
};
PowerLogFit fit_power_log_tail(const Integrand& g, double t_lo, double t_hi,
                               int n = 48);

/// Plain power fit (lam forced to 0): ln g ~ c + e ln t.
PowerLogFit fit_power_tail(const Integrand& g, double t_lo, double t_hi,
                           int n = 32);

}  // namespace fracblowup
