#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fracblowup/fraclap.hpp"
#include "fracblowup/kernels.hpp"
#include "fracblowup/ko.hpp"
#include "fracblowup/mesh.hpp"
#include "fracblowup/nonlinearity.hpp"

namespace fracblowup {

/// Exterior datum specification for solves with nonzero outside data.
struct ExteriorDataSpec {
    enum class Kind { Zero, Shell, KOShell, Table } kind = Kind::Zero;
    double inner = 1.0;   // shell 1 < inner < |y| < outer
    double outer = 2.0;
    double amplitude = 1.0;
    std::string table_path;
};

struct SolveConfig {
    double s = 0.5;
    int dim = 1;
    DomainKind domain = DomainKind::Interval;
    NonlinearityModel model = NonlinearityModel::power(2.5);
    int mesh_n = 256;
    double mesh_q = 0.0;  // <= 0: default 2/s
    double trace_k = 0.0;
    std::optional<ExteriorDataSpec> g_spec;
    int max_iters = 400;
    double tol = 1e-9;       // relative sup-norm gap on the regular part
    double damping = 1.0;    // in (0,1]
    double delta0 = 0.2;     // supersolution strip width
};

/// Shared per-mesh machinery reused across solves (Green weights, h1, xi).
struct SolverContext {
    KernelSet ks;
    std::shared_ptr<const GradedMesh> mesh;
    GreenOperator green;
    std::optional<FracLapOperator> pv_op;  // interval only
    std::vector<double> h1_nodes;
    std::vector<double> xi_nodes;
    KOProfile profile;
};

SolverContext make_solver_context(const SolveConfig& config);

struct SolveResult {
    GridFunction solution;   // trace split for k-problems
    int iterations = 0;
    bool converged = false;
    std::vector<double> gap_history;          // upper-lower bracket gaps
    std::vector<std::vector<double>> upper_history;  // monotone from above
    double l1_norm = 0.0;
    double max_residual = 0.0;  // PV residual on admissible nodes (interval)
    int clamped_nodes = 0;
    bool g2_warning = false;
};

/// Monotone bracket iteration for the problem with singular trace k and zero
/// exterior. Refuses (IntegrabilityError) when the growth condition on f
/// fails, mirroring the nonexistence regime.
SolveResult solve_k_problem(const SolveConfig& config, SolverContext& ctx);
SolveResult solve_k_problem(const SolveConfig& config);

/// Truncation ladder u_k with exterior data min{k, g}; stabilizes in L1.
SolveResult solve_g_problem(const SolveConfig& config, SolverContext& ctx);
SolveResult solve_g_problem(const SolveConfig& config);

struct SupersolutionSpec {
    double mu = 1.0;
    double lambda = 0.0;
    double C_measured = 0.0;
    double delta0 = 0.2;
    double M_used = 0.0;
    double interior_sup = 0.0;  // sup of the negative part of (-Lap)^s U inside
    GridFunction ubar;          // mu psi(delta^s) + lambda xi
    SupersolutionCheckReport global_check;
};

/// Measures the strip constant of U = psi(delta^s), lifts it to a global
/// supersolution mu U + lambda xi, and re-verifies the inequality.
SupersolutionSpec build_supersolution(const SolveConfig& config,
                                      SolverContext& ctx);

struct SweepResult {
    std::vector<double> k_list;
    std::vector<SolveResult> per_k;
    Regime observed = Regime::Unclassified;
    bool refused = false;
    std::string refusal_reason;
    bool monotone_in_k = true;
    double worst_monotonicity_violation = 0.0;
    bool under_h1_bound = true;      // u_k <= k h1
    bool under_supersolution = true; // u_k <= ubar (when built)
    std::optional<SupersolutionSpec> supersolution;
    std::vector<double> l1_norms;
    std::vector<double> strip_mins;      // min of u over {delta < 0.2}
    std::vector<double> interior_gaps;   // sup over {delta > 0.1} of u_{k+1}-u_k
    std::vector<double> traces;          // fitted singular traces
    bool trace_unbounded = false;
    std::vector<double> limit_estimate;  // Richardson-style, on Stabilizing
    bool limit_extrapolated = false;
};

SweepResult sweep_k(const SolveConfig& config, std::vector<double> k_list);

/// L1 norm of the total solution including the boundary sliver model.
double solution_l1_norm(const SolverContext& ctx, const GridFunction& gf);

}  // namespace fracblowup
