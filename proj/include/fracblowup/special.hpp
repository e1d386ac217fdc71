#pragma once

namespace fracblowup {

/// Normalization A(N,s) of the singular-integral fractional Laplacian,
/// A(N,s) = 4^s s Gamma(N/2+s) / (pi^{N/2} Gamma(1-s)).
double fraclap_normalization(int dim, double s);

/// Green-function constant of the unit ball,
/// kappa(N,s) = Gamma(N/2) / (4^s pi^{N/2} Gamma(s)^2).
double green_constant(int dim, double s);

/// Torsion constant: (-Lap)^s of gamma (1-|x|^2)^s_+ equals 1 in the ball
/// with gamma(N,s) = Gamma(N/2) / (4^s Gamma(N/2+s) Gamma(1+s)).
double torsion_constant(int dim, double s);

/// Poisson-kernel constant of the unit ball,
/// c(N,s) = Gamma(N/2) sin(pi s) / pi^{N/2+1}; normalized so the kernel
/// integrates to 1 over the exterior.
double poisson_constant(int dim, double s);

/// Complete Euler beta B(a,b), a,b > 0.
double beta_complete(double a, double b);

/// I(r0; s, N) = int_0^{r0} t^{s-1} (1+t)^{-N/2} dt, the radial factor of the
/// ball Green function. Series evaluation on complementary branches; exact
/// logarithmic form at the 2s = N degeneracy (N=1, s=1/2).
double green_inner_integral(double r0, double s, int dim);

/// I(inf; s, N) = B(s, N/2 - s); finite only when N/2 > s.
double green_inner_integral_complete(double s, int dim);

}  // namespace fracblowup
