#include "fracblowup/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracblowup/errors.hpp"
#include "fracblowup/quadrature.hpp"

namespace fracblowup {

namespace {

double default_q(const SolveConfig& c) {
    // resolves both the delta^{s-1} profile and the blow-up rate with
    // roughly uniform relative error
    return c.mesh_q > 0.0 ? c.mesh_q : 2.0 / c.s;
}

Exterior make_exterior(const SolveConfig& config, double truncation) {
    if (!config.g_spec) return ZeroExterior{};
    const ExteriorDataSpec& spec = *config.g_spec;
    switch (spec.kind) {
        case ExteriorDataSpec::Kind::Zero:
            return ZeroExterior{};
        case ExteriorDataSpec::Kind::Shell: {
            double lo = spec.inner - 1.0, hi = spec.outer - 1.0, a = spec.amplitude;
            return ClosedFormExterior{
                [lo, hi, a, truncation](double t) {
                    return (t >= lo && t <= hi) ? std::min(a, truncation) : 0.0;
                },
                "shell"};
        }
        case ExteriorDataSpec::Kind::KOShell:
            return ClosedFormExterior{nullptr, "koshell"};  // filled by caller
        case ExteriorDataSpec::Kind::Table: {
            NonlinearityModel tbl =
                NonlinearityModel::tabulated_from_csv(spec.table_path);
            return ClosedFormExterior{
                [tbl, truncation](double t) {
                    double lo = std::exp(tbl.table_t.front());
                    double hi = std::exp(tbl.table_t.back());
                    double tc = std::clamp(t, lo, hi);
                    return std::min(eval_f(tbl, tc), truncation);
                },
                "table"};
        }
    }
    return ZeroExterior{};
}

}  // namespace

SolverContext make_solver_context(const SolveConfig& config) {
    SolverContext ctx;
    ctx.ks = make_kernel_set(config.dim, config.s);
    Domain dom{config.domain, config.dim};
    auto mesh = std::make_shared<GradedMesh>(
        build_graded_mesh(dom, config.mesh_n, default_q(config)));
    ctx.mesh = mesh;
    ctx.green = assemble_green_operator(ctx.ks, mesh);
    if (config.domain == DomainKind::Interval)
        ctx.pv_op = make_fraclap_operator(mesh, config.s);
    ctx.h1_nodes.resize(mesh->n);
    ctx.xi_nodes.resize(mesh->n);
    for (int i = 0; i < mesh->n; ++i) {
        ctx.h1_nodes[i] = h1_value(ctx.ks, std::abs(mesh->nodes[i]));
        ctx.xi_nodes[i] = torsion_value(ctx.ks, std::abs(mesh->nodes[i]));
    }
    ctx.profile = make_ko_profile(config.model, config.s);
    return ctx;
}

double solution_l1_norm(const SolverContext& ctx, const GridFunction& gf) {
    const GradedMesh& m = *ctx.mesh;
    std::vector<double> tot = gf.totals();
    double sum = 0.0;
    for (int j = 0; j < m.n - 1; ++j)
        sum += 0.5 * (std::abs(tot[j]) + std::abs(tot[j + 1])) * m.cell_width(j);
    // boundary sliver by power model of the totals
    auto sliver = [&](int i0, int i1) {
        double v0 = std::abs(tot[i0]), v1 = std::abs(tot[i1]);
        double dn = m.delta[i0];
        if (!(v0 > 0.0) || dn <= 0.0) return 0.0;
        double beta = 0.0;
        if (v1 > 0.0)
            beta = std::clamp(std::log(v1 / v0) / std::log(m.delta[i1] / m.delta[i0]),
                              -6.0, 0.98);
        return v0 * dn / (1.0 - beta);
    };
    sum += sliver(m.n - 1, m.n - 2);
    if (m.domain.kind == DomainKind::Interval) sum += sliver(0, 1);
    // surface factor for the radial reduction
    if (m.domain.kind == DomainKind::RadialBall) {
        // totals already integrated against dr; multiply by |S^{N-1}| r^{N-1}
        // cannot be folded post hoc, so integrate again with the jacobian
        sum = 0.0;
        int N = ctx.ks.dim;
        double omega = 2.0 * std::pow(M_PI, 0.5 * N) / std::exp(std::lgamma(0.5 * N));
        for (int j = 0; j < m.n - 1; ++j) {
            double rj = m.nodes[j], rj1 = m.nodes[j + 1];
            sum += 0.5 *
                   (std::abs(tot[j]) * std::pow(rj, N - 1.0) +
                    std::abs(tot[j + 1]) * std::pow(rj1, N - 1.0)) *
                   (rj1 - rj);
        }
        sum += sliver(m.n - 1, m.n - 2);
        sum *= omega;
    }
    return sum;
}

namespace {

struct BracketState {
    std::vector<double> upper, lower;
    std::vector<double> gap_history;
    std::vector<std::vector<double>> upper_history;
    int iterations = 0;
    bool converged = false;
    int clamped = 0;
};

// One application of u -> clamp0(base - G[f(u)]).
std::vector<double> picard_map(const SolverContext& ctx,
                               const NonlinearityModel& model,
                               const std::vector<double>& base,
                               const std::vector<double>& u, int* clamped) {
    const int n = (int)u.size();
    std::vector<double> fu(n);
    for (int i = 0; i < n; ++i) fu[i] = eval_f(model, std::max(0.0, u[i]));
    std::vector<double> pot = green_apply(ctx.green, fu);
    std::vector<double> next(n);
    for (int i = 0; i < n; ++i) {
        double v = base[i] - pot[i];
        if (v < 0.0) {
            v = 0.0;
            if (clamped) ++*clamped;
        }
        next[i] = v;
    }
    return next;
}

// Monotone bracket: the map is antitone in u, so even iterates decrease and
// odd iterates increase; the fixed point is certified between them.
BracketState run_bracket(const SolverContext& ctx, const SolveConfig& config,
                         const std::vector<double>& base) {
    const int n = (int)base.size();
    BracketState st;
    st.upper = base;  // f >= 0 makes the base an upper starting point
    st.upper_history.push_back(st.upper);
    st.lower = picard_map(ctx, config.model, base, st.upper, &st.clamped);
    st.iterations = 1;
    double scale = 1.0;
    for (double v : base) scale = std::max(scale, std::abs(v));
    const double theta = config.damping;
    while (st.iterations < config.max_iters) {
        double gap = 0.0;
        for (int i = 0; i < n; ++i) gap = std::max(gap, st.upper[i] - st.lower[i]);
        st.gap_history.push_back(gap);
        if (gap <= config.tol * scale) {
            st.converged = true;
            break;
        }
        std::vector<double> next_upper =
            picard_map(ctx, config.model, base, st.lower, &st.clamped);
        if (theta < 1.0)
            for (int i = 0; i < n; ++i)
                next_upper[i] = (1.0 - theta) * st.upper[i] + theta * next_upper[i];
        // ordering can drift by quadrature error; keep the bracket nested
        for (int i = 0; i < n; ++i)
            next_upper[i] = std::min(next_upper[i], st.upper[i]);
        st.upper = std::move(next_upper);
        st.upper_history.push_back(st.upper);
        std::vector<double> next_lower =
            picard_map(ctx, config.model, base, st.upper, &st.clamped);
        for (int i = 0; i < n; ++i)
            next_lower[i] = std::max(next_lower[i], st.lower[i]);
        st.lower = std::move(next_lower);
        st.iterations += 2;
    }
    if (!st.converged) {
        double gap = st.gap_history.empty() ? 0.0 : st.gap_history.back();
        std::ostringstream os;
        os << "fixed-point bracket did not close in " << config.max_iters
           << " iterations; last gap " << gap << " (relative "
           << gap / scale << ")";
        throw IterationError(os.str());
    }
    return st;
}

std::vector<int> residual_region(const SolverContext& ctx) {
    // pointwise residuals avoid the outermost decade of the graded mesh,
    // where any fixed mesh under-resolves the blow-up
    std::vector<int> idx;
    if (!ctx.pv_op) return idx;
    double dmin = 100.0 * ctx.mesh->min_delta();
    for (int i : fraclap_admissible_indices(*ctx.pv_op))
        if (ctx.mesh->delta[i] > dmin) idx.push_back(i);
    return idx;
}

SolveResult finish_solve(const SolverContext& ctx, const SolveConfig& config,
                         BracketState&& st, GridFunction solution) {
    SolveResult res;
    res.iterations = st.iterations;
    res.converged = st.converged;
    res.gap_history = std::move(st.gap_history);
    res.upper_history = std::move(st.upper_history);
    res.clamped_nodes = st.clamped;
    res.solution = std::move(solution);
    res.l1_norm = solution_l1_norm(ctx, res.solution);
    if (ctx.pv_op) {
        std::vector<int> idx = residual_region(ctx);
        std::vector<double> r =
            fraclap_residual(*ctx.pv_op, res.solution, config.model, idx);
        for (double v : r) res.max_residual = std::max(res.max_residual, std::abs(v));
    }
    return res;
}

}  // namespace

SolveResult solve_k_problem(const SolveConfig& config, SolverContext& ctx) {
    if (config.trace_k < 0.0) throw DataError("trace k must be >= 0");
    const int n = ctx.mesh->n;

    if (config.trace_k == 0.0) {
        BracketState st;
        st.converged = true;
        st.upper.assign(n, 0.0);
        st.lower.assign(n, 0.0);
        st.upper_history.push_back(st.upper);
        GridFunction gf = make_grid_function(ctx.mesh, std::vector<double>(n, 0.0));
        gf.trace_coeff = 0.0;
        gf.singular_profile = ctx.h1_nodes;
        return finish_solve(ctx, config, std::move(st), std::move(gf));
    }

    // the growth condition gates the existence of any u_k: f(k h1) must be
    // integrable against delta^s
    ConditionReport e_report = check_E(ctx.profile);
    if (e_report.verdict == Verdict::Diverges)
        throw IntegrabilityError(
            "f(k h1) is not integrable against delta^s (growth condition "
            "fails: " + e_report.details + "); the trace problem admits no solution");

    std::vector<double> base(n);
    for (int i = 0; i < n; ++i) base[i] = config.trace_k * ctx.h1_nodes[i];
    BracketState st = run_bracket(ctx, config, base);

    std::vector<double> remainder(n);
    for (int i = 0; i < n; ++i) {
        double mid = 0.5 * (st.upper[i] + st.lower[i]);
        remainder[i] = mid - base[i];
    }
    GridFunction gf = make_grid_function(ctx.mesh, std::move(remainder));
    gf.trace_coeff = config.trace_k;
    gf.singular_profile = ctx.h1_nodes;
    return finish_solve(ctx, config, std::move(st), std::move(gf));
}

SolveResult solve_k_problem(const SolveConfig& config) {
    SolverContext ctx = make_solver_context(config);
    return solve_k_problem(config, ctx);
}

namespace {

double phi_of(const SolverContext& ctx, double u) {
    return phi(ctx.profile, u);
}

}  // namespace

SolveResult solve_g_problem(const SolveConfig& config, SolverContext& ctx) {
    if (!config.g_spec) throw DataError("solve_g_problem needs a g-spec");
    const int n = ctx.mesh->n;

    // materialize the untruncated datum once to test admissibility and (g2)
    Exterior full = make_exterior(config, 1e300);
    if (config.g_spec->kind == ExteriorDataSpec::Kind::KOShell) {
        double lo = config.g_spec->inner - 1.0, hi = config.g_spec->outer - 1.0;
        double s = config.s;
        const KOProfile* prof = &ctx.profile;
        full = ClosedFormExterior{
            [lo, hi, s, prof](double t) {
                if (t < lo || t > hi) return 0.0;
                return psi(*prof, std::pow(std::max(t, 1e-12), s));
            },
            "koshell"};
    }
    GridFunction carrier = make_grid_function(ctx.mesh, std::vector<double>(n, 0.0), full);

    // g in L1 of the exterior
    {
        auto g_abs = [&](double t) { return std::abs(carrier.exterior_value(t)); };
        double mass = 0.0;
        for (double a = 1e-8; a < 1e4; a *= 2.0)
            mass += gauss([&](double t) { return g_abs(t); }, a, std::min(2.0 * a, 1e4), 6);
        double gR = g_abs(1e4);
        if (gR > 0.0) {
            double decay = -std::log(g_abs(1e4) / std::max(g_abs(5e3), 1e-300)) /
                           std::log(2.0);
            if (decay <= 1.0 + (config.dim - 1.0) + 1e-6)
                throw DataError("exterior datum is not integrable over the exterior");
            mass += gR * 1e4 / (decay - 1.0);
        }
        if (!std::isfinite(mass))
            throw DataError("exterior datum is not integrable over the exterior");
    }

    SolveResult last;
    bool have_last = false;
    bool g2_ok = true;
    // (g2): phi(g) >= dist^s on samples near the boundary
    for (double t : log_spaced(1e-6, 0.05, 12)) {
        double g = carrier.exterior_value(t);
        if (g <= 0.0) { g2_ok = false; break; }
        if (phi_of(ctx, g) < std::pow(t, config.s) * (1.0 - 1e-6)) {
            g2_ok = false;
            break;
        }
    }

    double prev_l1 = -1.0;
    for (double k = 1.0; k <= 1e6; k *= 2.0) {
        Exterior trunc = full;
        if (auto* cf = std::get_if<ClosedFormExterior>(&trunc)) {
            auto inner = cf->value_of_dist;
            double cap = k;
            cf->value_of_dist = [inner, cap](double t) {
                return std::min(cap, inner(t));
            };
        }
        GridFunction gk = make_grid_function(ctx.mesh, std::vector<double>(n, 0.0), trunc);
        std::vector<double> base = poisson_apply(ctx.ks, *ctx.mesh, gk);
        BracketState st = run_bracket(ctx, config, base);
        std::vector<double> mid(n);
        for (int i = 0; i < n; ++i) mid[i] = 0.5 * (st.upper[i] + st.lower[i]);
        GridFunction sol = make_grid_function(ctx.mesh, std::move(mid), trunc);
        SolveResult res = finish_solve(ctx, config, std::move(st), std::move(sol));
        res.g2_warning = !g2_ok;
        double l1 = res.l1_norm;
        if (have_last && std::abs(l1 - prev_l1) <= 1e-6 * std::max(1.0, l1)) {
            return res;
        }
        prev_l1 = l1;
        last = std::move(res);
        have_last = true;
    }
    return last;
}

SolveResult solve_g_problem(const SolveConfig& config) {
    SolverContext ctx = make_solver_context(config);
    return solve_g_problem(config, ctx);
}

SupersolutionSpec build_supersolution(const SolveConfig& config,
                                      SolverContext& ctx) {
    if (!ctx.pv_op)
        throw DataError("supersolution audit needs the interval PV operator");
    ConditionReport l1 = check_L1(ctx.profile);
    if (l1.verdict != Verdict::Converges)
        throw DataError(
            "supersolution profile is not integrable (condition " +
            to_string(l1.condition) + " " + to_string(l1.verdict) + ")");

    const GradedMesh& m = *ctx.mesh;
    const int n = m.n;
    const double s = config.s;
    const KOProfile& prof = ctx.profile;

    auto U_of_dist = [&prof, s](double d) {
        return psi(prof, std::pow(std::max(d, 1e-300), s));
    };

    std::vector<double> U(n);
    for (int i = 0; i < n; ++i) U[i] = U_of_dist(m.delta[i]);
    GridFunction gU = make_grid_function(
        ctx.mesh, U, ClosedFormExterior{U_of_dist, "psi(delta^s)"});

    SupersolutionCheckReport raw =
        supersolution_inequality_check(*ctx.pv_op, gU, config.model, config.delta0);

    SupersolutionSpec spec;
    spec.delta0 = config.delta0;
    spec.M_used = ctx.profile.envelope.M;
    spec.C_measured = raw.strip_C;
    spec.interior_sup = std::max(0.0, -raw.interior_min_raw);
    spec.mu = std::max(1.0, std::pow(raw.strip_C, 1.0 / spec.M_used));
    spec.lambda = spec.mu * spec.interior_sup;

    std::vector<double> ubar(n);
    for (int i = 0; i < n; ++i)
        ubar[i] = spec.mu * U[i] + spec.lambda * ctx.xi_nodes[i];
    double mu = spec.mu;
    spec.ubar = make_grid_function(
        ctx.mesh, ubar,
        ClosedFormExterior{[U_of_dist, mu](double d) { return mu * U_of_dist(d); },
                           "mu psi(delta^s)"});

    spec.global_check = supersolution_inequality_check(*ctx.pv_op, spec.ubar,
                                                       config.model, config.delta0);
    if (spec.global_check.min_residual_scaled < -1e-3) {
        std::ostringstream os;
        os << "supersolution re-verification failed: min scaled residual "
           << spec.global_check.min_residual_scaled << " at node "
           << spec.global_check.argmin_index
           << " (quadrature resolution too coarse)";
        throw SupersolutionError(os.str());
    }
    return spec;
}

SweepResult sweep_k(const SolveConfig& config, std::vector<double> k_list) {
    for (size_t i = 1; i < k_list.size(); ++i)
        if (!(k_list[i] > k_list[i - 1]) || !(k_list[0] > 0.0))
            throw DataError("k_list must be ascending and positive");
    SolverContext ctx = make_solver_context(config);

    SweepResult sw;
    sw.k_list = k_list;

    try {
        SolveConfig c0 = config;
        c0.trace_k = k_list[0];
        sw.per_k.push_back(solve_k_problem(c0, ctx));
    } catch (const IntegrabilityError& e) {
        sw.refused = true;
        sw.refusal_reason = e.what();
        sw.observed = Regime::Nonexistence;
        return sw;
    }
    for (size_t ik = 1; ik < k_list.size(); ++ik) {
        SolveConfig ck = config;
        ck.trace_k = k_list[ik];
        sw.per_k.push_back(solve_k_problem(ck, ctx));
    }

    const GradedMesh& m = *ctx.mesh;
    std::vector<int> strip = m.strip_indices(0.2);
    std::vector<int> interior;
    for (int i = 0; i < m.n; ++i)
        if (m.delta[i] > 0.1) interior.push_back(i);

    if (check_L1(ctx.profile).verdict == Verdict::Converges &&
        check_E(ctx.profile).verdict == Verdict::Converges) {
        sw.supersolution = build_supersolution(config, ctx);
    }

    for (size_t ik = 0; ik < sw.per_k.size(); ++ik) {
        const SolveResult& r = sw.per_k[ik];
        std::vector<double> tot = r.solution.totals();
        sw.l1_norms.push_back(r.l1_norm);
        double smin = 1e300;
        for (int i : strip) smin = std::min(smin, tot[i]);
        sw.strip_mins.push_back(smin);
        if (ik > 0) {
            std::vector<double> prev = sw.per_k[ik - 1].solution.totals();
            double gap = 0.0, viol = 0.0;
            for (int i : interior) gap = std::max(gap, tot[i] - prev[i]);
            for (int i = 0; i < m.n; ++i) viol = std::max(viol, prev[i] - tot[i]);
            sw.interior_gaps.push_back(gap);
            sw.worst_monotonicity_violation =
                std::max(sw.worst_monotonicity_violation, viol);
        }
        // sandwich checks
        for (int i = 0; i < m.n; ++i) {
            double kh1 = k_list[ik] * ctx.h1_nodes[i];
            if (tot[i] > kh1 + 1e-8 + config.tol * kh1) sw.under_h1_bound = false;
            if (sw.supersolution) {
                double ub = sw.supersolution->ubar.values[i];
                if (tot[i] > ub * (1.0 + 1e-6) + 1e-8) sw.under_supersolution = false;
            }
        }
    }
    double mono_scale = 0.0;
    for (const auto& r : sw.per_k)
        for (double v : r.solution.totals()) mono_scale = std::max(mono_scale, std::abs(v));
    sw.monotone_in_k =
        sw.worst_monotonicity_violation <= 1e-8 + config.tol * mono_scale * 10.0;

    // fitted traces: delta^{1-s} u extrapolated to the boundary
    for (const auto& r : sw.per_k) {
        std::vector<double> tot = r.solution.totals();
        double num = 0.0, den = 0.0;
        for (int i : strip) {
            double w = std::pow(m.delta[i], 1.0 - config.s);
            // weight toward the boundary nodes
            double wt = 1.0 / std::max(m.delta[i], 1e-12);
            num += wt * w * tot[i];
            den += wt;
        }
        sw.traces.push_back(den > 0.0 ? num / den : 0.0);
    }
    if (sw.traces.size() >= 2) {
        double first = sw.traces.front(), last = sw.traces.back();
        double kratio = k_list.back() / k_list.front();
        sw.trace_unbounded = last > 0.0 && first > 0.0 &&
                             last / first >= 0.5 * kratio;
    }

    // classification: stabilizing interior, then the two blow-up regimes
    bool stabilizing = false;
    if (sw.interior_gaps.size() >= 2) {
        double scale = 0.0;
        std::vector<double> last_tot = sw.per_k.back().solution.totals();
        for (int i : interior) scale = std::max(scale, std::abs(last_tot[i]));
        bool decreasing = true;
        for (size_t i = 1; i < sw.interior_gaps.size(); ++i)
            if (sw.interior_gaps[i] > sw.interior_gaps[i - 1] * 1.05)
                decreasing = false;
        stabilizing =
            decreasing && sw.interior_gaps.back() <= 0.02 * std::max(1.0, scale);
    }
    if (stabilizing) {
        sw.observed = Regime::LargeSolution;
        // Richardson-style estimate from the geometric tail of the k-ladder
        const std::vector<double> ul = sw.per_k.back().solution.totals();
        const std::vector<double> up = sw.per_k[sw.per_k.size() - 2].solution.totals();
        double r_est = sw.interior_gaps.back() /
                       std::max(sw.interior_gaps[sw.interior_gaps.size() - 2], 1e-300);
        r_est = std::clamp(r_est, 0.0, 0.9);
        sw.limit_estimate.resize(m.n);
        for (int i = 0; i < m.n; ++i)
            sw.limit_estimate[i] = ul[i] + (ul[i] - up[i]) * r_est / (1.0 - r_est);
        sw.limit_extrapolated = true;
        return sw;
    }

    std::optional<LinearBound> lin = check_linear_bound(config.model);
    bool sublinear = lin && !lin->range_limited;
    bool strip_growth =
        sw.strip_mins.back() >= 4.0 * std::max(sw.strip_mins.front(), 1e-300);
    bool l1_growth = true;
    for (size_t i = 1; i < sw.l1_norms.size(); ++i)
        if (sw.l1_norms[i] < 1.5 * sw.l1_norms[i - 1]) l1_growth = false;

    if (sublinear && strip_growth)
        sw.observed = Regime::UniformBlowup;
    else if (l1_growth)
        sw.observed = Regime::L1Escape;
    else
        sw.observed = Regime::Unclassified;
    return sw;
}

}  // namespace fracblowup
