#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fracblowup {

enum class DomainKind { Interval, RadialBall };

/// Computational domain: the interval (-1,1) or the unit ball reduced to its
/// radial coordinate.
struct Domain {
    DomainKind kind = DomainKind::Interval;
    int dim = 1;  // 1 for the interval; >= 1 for the ball
};

/// Signed-free distance to the boundary, extended outside the domain:
/// 1 - |x| inside, |x| - 1 outside. For the ball, x is the radius.
double boundary_distance(const Domain& domain, double x);

/// Mesh over the domain with nodes clustered toward the boundary: node
/// positions are uniform in the variable delta^{1/q}.
struct GradedMesh {
    Domain domain;
    int n = 0;       // interior node count
    double q = 1.0;  // grading exponent
    std::vector<double> nodes;  // strictly increasing coordinates (x or r)
    std::vector<double> delta;  // 1 - |node|, computed without cancellation

    double min_delta() const;
    /// Indices of nodes with delta < delta0 (may touch both ends of an
    /// interval mesh). Empty strip is fine.
    std::vector<int> strip_indices(double delta0) const;
    /// Width of the mesh cell [nodes[i], nodes[i+1]].
    double cell_width(int i) const { return nodes[i + 1] - nodes[i]; }
};

GradedMesh build_graded_mesh(const Domain& domain, int n, double q);

/// Exterior datum of a grid function.
struct ZeroExterior {};
struct TabulatedExterior {
    // samples of the datum as a function of delta(y) = |y| - 1 > 0,
    // log-spaced in dist; interpolated linearly in log-log
    std::vector<double> dist;
    std::vector<double> value;
    double decay_exponent = 2.0;  // |g| ~ dist^{-decay} beyond the table
};
struct ClosedFormExterior {
    std::function<double(double)> value_of_dist;  // argument: |y| - 1 > 0
    std::string tag;
};
using Exterior = std::variant<ZeroExterior, TabulatedExterior, ClosedFormExterior>;

/// Values on a graded mesh plus exterior data. When trace_coeff is set the
/// stored values are the regular remainder u - trace_coeff * h1 and
/// singular_profile holds h1 at the nodes.
struct GridFunction {
    std::shared_ptr<const GradedMesh> mesh;
    std::vector<double> values;
    Exterior exterior = ZeroExterior{};
    std::optional<double> trace_coeff;
    std::vector<double> singular_profile;  // aligned with nodes when trace set

    double total_at(int i) const {
        if (trace_coeff) return values[i] + *trace_coeff * singular_profile[i];
        return values[i];
    }
    std::vector<double> totals() const;
    double exterior_value(double dist) const;
    bool has_exterior_data() const {
        return !std::holds_alternative<ZeroExterior>(exterior);
    }
};

GridFunction make_grid_function(std::shared_ptr<const GradedMesh> mesh,
                                std::vector<double> values,
                                Exterior exterior = ZeroExterior{});

/// CSV layout: header comment recording s, N, trace_coeff, then columns
/// x,delta,value,singular_part,total with 17 significant digits.
void write_grid_function_csv(const GridFunction& gf, const std::string& path,
                             double s, int dim);
struct LoadedGridFunction {
    GridFunction gf;
    double s = 0.0;
    int dim = 1;
};
LoadedGridFunction read_grid_function_csv(const std::string& path);

}  // namespace fracblowup
