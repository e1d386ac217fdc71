#pragma once

#include <memory>
#include <span>
#include <vector>

#include "fracblowup/mesh.hpp"
#include "fracblowup/nonlinearity.hpp"
#include "fracblowup/parallel.hpp"

namespace fracblowup {

/// Pointwise principal-value fractional Laplacian on the interval (-1,1):
/// piecewise-linear far field with exact kernel moments, a symmetric-window
/// quadratic stencil around the target node, power-model boundary slivers,
/// and closed-form/quadrature exterior tails. Nonnegative off-diagonal
/// weights by construction (discrete maximum principle).
struct FracLapOperator {
    double s = 0.5;
    double a_const = 0.0;  // A(1,s)
    std::shared_ptr<const GradedMesh> mesh;
    double exterior_rmax = 100.0;
    int stencil_margin = 2;  // nodes required on each side of the target
};

FracLapOperator make_fraclap_operator(std::shared_ptr<const GradedMesh> mesh,
                                      double s);

bool fraclap_admissible(const FracLapOperator& op, int i);
std::vector<int> fraclap_admissible_indices(const FracLapOperator& op);

/// (-Lap)^s u at node i. Throws ProximityError within the stencil margin.
double fraclap_apply(const FracLapOperator& op, const GridFunction& u, int i);

std::vector<double> fraclap_apply_all(const FracLapOperator& op,
                                      const GridFunction& u,
                                      std::span<const int> indices,
                                      Parallelism par = Parallelism::OpenMP);

/// r(x) = (-Lap)^s u(x) + f(u(x)) per node of `indices`.
std::vector<double> fraclap_residual(const FracLapOperator& op,
                                     const GridFunction& u,
                                     const NonlinearityModel& model,
                                     std::span<const int> indices,
                                     Parallelism par = Parallelism::OpenMP);

/// Off-diagonal interior quadrature weights of row i (near + far field),
/// exposed so the sign structure is testable.
std::vector<double> fraclap_interior_weights(const FracLapOperator& op, int i);

struct SupersolutionCheckReport {
    double strip_C = 0.0;          // best C with (-Lap)^s u >= -C f(u) on the strip
    double interior_min_raw = 0.0; // min of (-Lap)^s u outside the strip
    double min_residual = 0.0;     // min over admissible nodes of apply + f
    double min_residual_scaled = 0.0;  // normalized by max(1, f(u))
    int argmin_index = -1;
    double delta0 = 0.0;
    int n_strip = 0;
    int n_interior = 0;
};

SupersolutionCheckReport supersolution_inequality_check(
    const FracLapOperator& op, const GridFunction& ubar,
    const NonlinearityModel& model, double delta0);

}  // namespace fracblowup
