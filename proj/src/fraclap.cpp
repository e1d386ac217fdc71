#include "fracblowup/fraclap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "exterior_integration.hpp"
#include "fracblowup/errors.hpp"
#include "fracblowup/parallel.hpp"
#include "fracblowup/quadrature.hpp"
#include "fracblowup/special.hpp"

namespace fracblowup {

namespace {

// int_a^b z^{-2s} dz, a,b > 0
double kernel_first_moment(double a, double b, double s) {
    if (s == 0.5) return std::log(b / a);
    return (std::pow(b, 1.0 - 2.0 * s) - std::pow(a, 1.0 - 2.0 * s)) /
           (1.0 - 2.0 * s);
}

// int_a^b z^{-1-2s} dz
double kernel_zero_moment(double a, double b, double s) {
    return (std::pow(a, -2.0 * s) - std::pow(b, -2.0 * s)) / (2.0 * s);
}

struct SliverModel {
    // values of u on the sliver between the outermost node and the boundary:
    // u(delta) = value * (delta/delta_node)^{-beta}, or linear when the data
    // do not look like a power
    double value = 0.0;
    double beta = 0.0;
    double slope = 0.0;  // linear fallback slope in delta
    bool power = true;
    double delta_node = 0.0;
};

SliverModel fit_sliver(const GridFunction& u, bool right_side) {
    const GradedMesh& m = *u.mesh;
    const int n = m.n;
    int i0 = right_side ? n - 1 : 0;
    int i1 = right_side ? n - 2 : 1;
    SliverModel sm;
    sm.delta_node = m.delta[i0];
    sm.value = u.values[i0];
    if (u.trace_coeff) {
        // remainder stays bounded; constant extension
        sm.power = true;
        sm.beta = 0.0;
        return sm;
    }
    double v0 = u.values[i0], v1 = u.values[i1];
    if (v0 > 0.0 && v1 > 0.0) {
        double lr = std::log(m.delta[i1] / m.delta[i0]);
        sm.beta = std::clamp(std::log(v1 / v0) / lr, -6.0, 0.95);
        sm.power = true;
    } else {
        sm.power = false;
        double h = std::abs(m.delta[i1] - m.delta[i0]);
        sm.slope = h > 0.0 ? (v1 - v0) / h : 0.0;  // du/d(delta)
    }
    return sm;
}

double sliver_value(const SliverModel& sm, double delta) {
    if (sm.power) return sm.value * std::pow(delta / sm.delta_node, -sm.beta);
    return sm.value + sm.slope * (delta - sm.delta_node);
}

// int over the sliver of u_model(y) K(|x0-y|) dy with the power behavior
// absorbed by substitution; dist_to_boundary = |x0 -+ 1|
double sliver_data_integral(const SliverModel& sm, double dist_to_boundary,
                            double s) {
    const double dn = sm.delta_node;
    if (dn <= 0.0) return 0.0;
    const GaussRule& rule = gauss_rule(8);
    double sum = 0.0;
    if (sm.power && sm.beta > 0.0) {
        // delta = dn * sigma^{1/(1-beta)} turns the integrand smooth
        double expo = 1.0 / (1.0 - sm.beta);
        for (size_t k = 0; k < rule.nodes.size(); ++k) {
            double sigma = 0.5 + 0.5 * rule.nodes[k];
            double w = 0.5 * rule.weights[k];
            double delta = dn * std::pow(sigma, expo);
            double jac = dn * expo * std::pow(sigma, expo - 1.0);
            double dist = dist_to_boundary - delta;
            sum += w * sliver_value(sm, delta) * std::pow(dist, -1.0 - 2.0 * s) * jac;
        }
        return sum;
    }
    for (size_t k = 0; k < rule.nodes.size(); ++k) {
        double delta = dn * (0.5 + 0.5 * rule.nodes[k]);
        double w = 0.5 * dn * rule.weights[k];
        double dist = dist_to_boundary - delta;
        sum += w * sliver_value(sm, delta) * std::pow(dist, -1.0 - 2.0 * s);
    }
    return sum;
}

}  // namespace

FracLapOperator make_fraclap_operator(std::shared_ptr<const GradedMesh> mesh,
                                      double s) {
    if (mesh->domain.kind != DomainKind::Interval)
        throw DataError(
            "the pointwise PV operator is implemented on the interval only; "
            "the ball is verified through its Green representation");
    FracLapOperator op;
    op.s = s;
    op.a_const = fraclap_normalization(1, s);
    op.mesh = std::move(mesh);
    return op;
}

bool fraclap_admissible(const FracLapOperator& op, int i) {
    return i >= op.stencil_margin && i < op.mesh->n - op.stencil_margin;
}

std::vector<int> fraclap_admissible_indices(const FracLapOperator& op) {
    std::vector<int> idx;
    for (int i = op.stencil_margin; i < op.mesh->n - op.stencil_margin; ++i)
        idx.push_back(i);
    return idx;
}

namespace {

double apply_impl(const FracLapOperator& op, const GridFunction& u, int i,
                  const detail::ExteriorSamples* ext) {
    const GradedMesh& m = *op.mesh;
    const double s = op.s;
    const int n = m.n;
    if (!fraclap_admissible(op, i))
        throw ProximityError(
            "node " + std::to_string(i) + " is inside the boundary stencil "
            "exclusion zone; minimal admissible delta is " +
                std::to_string(m.delta[op.stencil_margin]),
            m.delta[op.stencil_margin]);

    // The singular part trace*h1 is exactly annihilated with zero exterior;
    // the numerics act on the stored remainder.
    const std::vector<double>& v = u.values;
    const double x0 = m.nodes[i];
    const double hm = m.nodes[i] - m.nodes[i - 1];
    const double hp = m.nodes[i + 1] - m.nodes[i];
    const double r = std::min(hm, hp);

    double acc = 0.0;

    // symmetric window: the PV kills the odd term of the quadratic model
    // through (i-1, i, i+1); the curvature term has positive weights
    {
        double D = hp * hm * (hp + hm);
        double wq = 2.0 * std::pow(r, 2.0 - 2.0 * s) / ((2.0 - 2.0 * s) * D);
        acc += wq * hm * (v[i] - v[i + 1]) + wq * hp * (v[i] - v[i - 1]);
    }
    if (hp > r)
        acc += (v[i] - v[i + 1]) / hp * kernel_first_moment(r, hp, s);
    if (hm > r)
        acc += (v[i] - v[i - 1]) / hm * kernel_first_moment(r, hm, s);

    // far cells: piecewise-linear u against exact kernel moments
    for (int j = 0; j < n - 1; ++j) {
        if (j == i - 1 || j == i) continue;
        double p = m.nodes[j], q = m.nodes[j + 1], h = q - p;
        double M0, M1;
        if (p > x0) {
            double t1 = p - x0, t2 = q - x0;
            M0 = kernel_zero_moment(t1, t2, s);
            M1 = kernel_first_moment(t1, t2, s) - t1 * M0;
        } else {
            double t1 = x0 - q, t2 = x0 - p;
            M0 = kernel_zero_moment(t1, t2, s);
            M1 = t2 * M0 - kernel_first_moment(t1, t2, s);
        }
        acc += (v[i] - v[j]) * (M0 - M1 / h) + (v[i] - v[j + 1]) * (M1 / h);
    }

    // boundary slivers between the outermost nodes and +-1
    {
        SliverModel right = fit_sliver(u, true);
        SliverModel left = fit_sliver(u, false);
        double dr = 1.0 - x0;  // distance to +1
        double dl = 1.0 + x0;  // distance to -1
        // u_i * kernel moment over the sliver
        acc += v[i] * kernel_zero_moment(dr - m.delta[n - 1], dr, s);
        acc += v[i] * kernel_zero_moment(dl - m.delta[0], dl, s);
        acc -= sliver_data_integral(right, dr, s);
        acc -= sliver_data_integral(left, dl, s);
    }

    // exterior: closed-form moment for the u_i part, sampled quadrature for
    // the datum
    {
        double dr = 1.0 - x0, dl = 1.0 + x0;
        acc += v[i] * (std::pow(dr, -2.0 * s) + std::pow(dl, -2.0 * s)) /
               (2.0 * s);
        if (u.has_exterior_data()) {
            detail::ExteriorSamples local;
            const detail::ExteriorSamples* use = ext;
            if (!use) {
                local = detail::sample_exterior(u, op.exterior_rmax);
                use = &local;
            }
            auto kernel = [&](double t) {
                return std::pow(dr + t, -1.0 - 2.0 * s) +
                       std::pow(dl + t, -1.0 - 2.0 * s);
            };
            acc -= detail::exterior_integral(*use, kernel, 1.0 + 2.0 * s);
        }
    }

    return op.a_const * acc;
}

}  // namespace

double fraclap_apply(const FracLapOperator& op, const GridFunction& u, int i) {
    return apply_impl(op, u, i, nullptr);
}

std::vector<double> fraclap_apply_all(const FracLapOperator& op,
                                      const GridFunction& u,
                                      std::span<const int> indices,
                                      Parallelism par) {
    std::vector<double> out(indices.size());
    detail::ExteriorSamples ext = detail::sample_exterior(u, op.exterior_rmax);
    if (par == Parallelism::OpenMP) {
#pragma omp parallel for schedule(static)
        for (long k = 0; k < (long)indices.size(); ++k)
            out[k] = apply_impl(op, u, indices[k], &ext);
    } else {
        for (size_t k = 0; k < indices.size(); ++k)
            out[k] = apply_impl(op, u, indices[k], &ext);
    }
    return out;
}

std::vector<double> fraclap_residual(const FracLapOperator& op,
                                     const GridFunction& u,
                                     const NonlinearityModel& model,
                                     std::span<const int> indices,
                                     Parallelism par) {
    std::vector<double> r = fraclap_apply_all(op, u, indices, par);
    for (size_t k = 0; k < indices.size(); ++k)
        r[k] += eval_f(model, std::max(0.0, u.total_at(indices[k])));
    return r;
}

std::vector<double> fraclap_interior_weights(const FracLapOperator& op, int i) {
    const GradedMesh& m = *op.mesh;
    const double s = op.s;
    const int n = m.n;
    if (!fraclap_admissible(op, i))
        throw ProximityError("weights requested inside the exclusion zone",
                             m.delta[op.stencil_margin]);
    std::vector<double> w(n, 0.0);
    const double x0 = m.nodes[i];
    const double hm = m.nodes[i] - m.nodes[i - 1];
    const double hp = m.nodes[i + 1] - m.nodes[i];
    const double r = std::min(hm, hp);
    double D = hp * hm * (hp + hm);
    double wq = 2.0 * std::pow(r, 2.0 - 2.0 * s) / ((2.0 - 2.0 * s) * D);
    w[i + 1] += wq * hm;
    w[i - 1] += wq * hp;
    if (hp > r) w[i + 1] += kernel_first_moment(r, hp, s) / hp;
    if (hm > r) w[i - 1] += kernel_first_moment(r, hm, s) / hm;
    for (int j = 0; j < n - 1; ++j) {
        if (j == i - 1 || j == i) continue;
        double p = m.nodes[j], q = m.nodes[j + 1], h = q - p;
        double M0, M1;
        if (p > x0) {
            double t1 = p - x0, t2 = q - x0;
            M0 = kernel_zero_moment(t1, t2, s);
            M1 = kernel_first_moment(t1, t2, s) - t1 * M0;
        } else {
            double t1 = x0 - q, t2 = x0 - p;
            M0 = kernel_zero_moment(t1, t2, s);
            M1 = t2 * M0 - kernel_first_moment(t1, t2, s);
        }
        w[j] += M0 - M1 / h;
        w[j + 1] += M1 / h;
    }
    return w;
}

SupersolutionCheckReport supersolution_inequality_check(
    const FracLapOperator& op, const GridFunction& ubar,
    const NonlinearityModel& model, double delta0) {
    const GradedMesh& m = *op.mesh;
    SupersolutionCheckReport rep;
    rep.delta0 = delta0;
    std::vector<int> idx = fraclap_admissible_indices(op);
    std::vector<double> lap = fraclap_apply_all(op, ubar, idx);
    rep.strip_C = 0.0;
    rep.interior_min_raw = 1e300;
    rep.min_residual = 1e300;
    rep.min_residual_scaled = 1e300;
    for (size_t k = 0; k < idx.size(); ++k) {
        int i = idx[k];
        double fu = eval_f(model, std::max(0.0, ubar.total_at(i)));
        double res = lap[k] + fu;
        if (res < rep.min_residual) {
            rep.min_residual = res;
            rep.argmin_index = i;
        }
        rep.min_residual_scaled =
            std::min(rep.min_residual_scaled, res / std::max(1.0, fu));
        if (m.delta[i] < delta0) {
            ++rep.n_strip;
            if (lap[k] < 0.0 && fu > 0.0)
                rep.strip_C = std::max(rep.strip_C, -lap[k] / fu);
        } else {
            ++rep.n_interior;
            rep.interior_min_raw = std::min(rep.interior_min_raw, lap[k]);
        }
    }
    return rep;
}

}  // namespace fracblowup
