#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "fracblowup/mesh.hpp"
#include "fracblowup/parallel.hpp"

namespace fracblowup {

/// Closed-form solution kernels of the unit ball/interval. All kernels
/// depend on points only through (|x-y|, |x|, |y|), so one scalar API covers
/// every dimension.
struct KernelSet {
    int dim = 1;
    double s = 0.5;
    double kappa = 0.0;          // Green constant
    double torsion_gamma = 0.0;  // torsion amplitude
    double poisson_c = 0.0;      // Poisson constant
    double a_const = 0.0;        // operator normalization A(N,s)
    double h1_norm = 0.0;        // 2^{1-s}: unit singular trace for h1
};

KernelSet make_kernel_set(int dim, double s);

/// Green function from the mutual distance and the two radii.
double green_value(const KernelSet& ks, double dist, double ax, double ay);
/// Poisson kernel, |y| = ay > 1 > ax.
double poisson_value(const KernelSet& ks, double dist, double ax, double ay);
/// Torsion function gamma (1-|x|^2)^s.
double torsion_value(const KernelSet& ks, double ax);
/// Boundary singular profile 2^{1-s} (1-|x|^2)^{s-1}; s-harmonic with zero
/// exterior and unit singular trace.
double h1_value(const KernelSet& ks, double ax);

/// Quadrature of the Green potential against piecewise-linear sources on a
/// graded mesh, with diagonal cells resolved by geometrically graded panels
/// and boundary slivers by a power model of the source.
struct GreenOperator {
    KernelSet ks;
    std::shared_ptr<const GradedMesh> mesh;
    std::vector<double> weights;    // n x n row-major hat-function integrals
    std::vector<double> cell_mass;  // trapezoid weights (L1, diagnostics)
};

GreenOperator assemble_green_operator(const KernelSet& ks,
                                      std::shared_ptr<const GradedMesh> mesh,
                                      Parallelism par = Parallelism::OpenMP);

/// Potential of a nodal source at every node. Fits a power model of the
/// source on the boundary sliver; a fitted growth exponent >= 1+s means the
/// delta^s-weighted source integral diverges -> IntegrabilityError.
std::vector<double> green_apply(const GreenOperator& op,
                                std::span<const double> source);

/// delta^s-weighted l1 moment of a source (the admissibility quantity).
double weighted_source_norm(const GreenOperator& op,
                            std::span<const double> source);

/// Slow reference path: adaptive quadrature of the same piecewise-linear
/// source, independent of the assembled weights. Kept for testing.
double green_apply_reference(const KernelSet& ks, const GradedMesh& mesh,
                             std::span<const double> source, int target);

/// s-harmonic extension of exterior data evaluated at the mesh nodes.
/// The datum is a function of the boundary distance |y|-1 (radial for the
/// ball, symmetric for the interval).
std::vector<double> poisson_apply(const KernelSet& ks, const GradedMesh& mesh,
                                  const GridFunction& data_carrier,
                                  Parallelism par = Parallelism::OpenMP);

/// Angular average of the Green kernel over the sphere |y| = rho times the
/// surface jacobian rho^{N-1} (radial reduction of the ball).
double ball_angular_green(const KernelSet& ks, double r, double rho);

}  // namespace fracblowup
