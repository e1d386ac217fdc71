#pragma once

// Test-side oracles, independent of the library's evaluation paths: fixed
// high-order quadrature, a direct PV integral of closed-form profiles, and a
// brute-force tail integral. Used to freeze expected values.

#include <functional>

namespace oracles {

/// Composite fixed-order Gauss-Legendre; independent of the adaptive driver.
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int panels = 64, int order = 24);

/// (-Lap)^s u(x) for a closed-form profile supported in [-1,1] (zero outside),
/// via the symmetric second-difference form of the PV integral.
double pv_fraclap(const std::function<double(double)>& u, double x, double s,
                  double rel_tol = 1e-10);

/// int_u^inf F(t)^{-1/2} dt by adaptive quadrature out to `cutoff` plus a
/// monotone tail bound from local power decay.
double phi_brute(const std::function<double(double)>& F, double u,
                 double cutoff = 1e10);

/// int_0^r0 t^{s-1} (1+t)^{-N/2} dt by substitution + adaptive quadrature.
double green_inner_brute(double r0, double s, int dim);

}  // namespace oracles
