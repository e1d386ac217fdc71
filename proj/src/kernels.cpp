#include "fracblowup/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "exterior_integration.hpp"
#include "fracblowup/errors.hpp"
#include "fracblowup/quadrature.hpp"
#include "fracblowup/special.hpp"

namespace fracblowup {

KernelSet make_kernel_set(int dim, double s) {
    KernelSet ks;
    ks.dim = dim;
    ks.s = s;
    ks.kappa = green_constant(dim, s);
    ks.torsion_gamma = torsion_constant(dim, s);
    ks.poisson_c = poisson_constant(dim, s);
    ks.a_const = fraclap_normalization(dim, s);
    ks.h1_norm = std::pow(2.0, 1.0 - s);
    return ks;
}

namespace {
double one_minus_sq(double a) { return (1.0 - a) * (1.0 + a); }
}  // namespace

double green_value(const KernelSet& ks, double dist, double ax, double ay) {
    if (!(dist > 0.0))
        throw DataError("green kernel evaluated on the diagonal (x = y)");
    if (!(ax < 1.0 && ay < 1.0)) return 0.0;
    double r0 = one_minus_sq(ax) * one_minus_sq(ay) / (dist * dist);
    return ks.kappa * std::pow(dist, 2.0 * ks.s - ks.dim) *
           green_inner_integral(r0, ks.s, ks.dim);
}

double poisson_value(const KernelSet& ks, double dist, double ax, double ay) {
    if (!(ay > 1.0 && ax < 1.0))
        throw DataError("poisson kernel needs |x| < 1 < |y|");
    double ratio = one_minus_sq(ax) / ((ay - 1.0) * (ay + 1.0));
    return ks.poisson_c * std::pow(ratio, ks.s) * std::pow(dist, -(double)ks.dim);
}

double torsion_value(const KernelSet& ks, double ax) {
    if (ax >= 1.0) return 0.0;
    return ks.torsion_gamma * std::pow(one_minus_sq(ax), ks.s);
}

double h1_value(const KernelSet& ks, double ax) {
    if (ax >= 1.0) return 0.0;
    return ks.h1_norm * std::pow(one_minus_sq(ax), ks.s - 1.0);
}

double ball_angular_green(const KernelSet& ks, double r, double rho) {
    const int N = ks.dim;
    if (N == 1) {
        double sum = green_value(ks, std::abs(r - rho), r, rho);
        if (r + rho > 0.0) sum += green_value(ks, r + rho, r, rho);
        return sum;
    }
    if (N == 3) {
        // exact reduction of the sphere average to a radial integral
        auto g = [&](double R) { return green_value(ks, R, r, rho) * R; };
        double lo = std::abs(r - rho), hi = r + rho;
        double val = gauss_graded(g, lo, hi, lo, 48, 6);
        return 2.0 * M_PI * rho / std::max(r, 1e-300) * val;
    }
    // general dimension: polar angle quadrature with surface weight
    double omega = 2.0 * std::pow(M_PI, 0.5 * (N - 1)) /
                   std::exp(std::lgamma(0.5 * (N - 1)));
    auto g = [&](double theta) {
        double R2 = (r - rho) * (r - rho) +
                    4.0 * r * rho * std::sin(0.5 * theta) * std::sin(0.5 * theta);
        double R = std::sqrt(R2);
        double w = N == 2 ? 1.0 : std::pow(std::sin(theta), N - 2.0);
        return green_value(ks, R, r, rho) * w;
    };
    double val = gauss_graded(g, 0.0, M_PI, 0.0, 48, 6);
    return std::pow(rho, N - 1.0) * omega * val;
}

namespace {

// kernel of the potential in the mesh coordinate: the Green function itself
// on the interval, its angular average for the ball
double radial_kernel(const KernelSet& ks, const GradedMesh& mesh, double x0,
                     double y) {
    if (mesh.domain.kind == DomainKind::Interval)
        return green_value(ks, std::abs(x0 - y), std::abs(x0), std::abs(y));
    return ball_angular_green(ks, x0, y);
}

// hat-weighted integrals of the kernel over the cell [p,q]:
// returns {int K (q-y)/h, int K (y-p)/h}
std::pair<double, double> cell_hat_integrals(const KernelSet& ks,
                                             const GradedMesh& mesh, double x0,
                                             double p, double q,
                                             bool singular_adjacent) {
    double h = q - p;
    auto left = [&](double y) { return radial_kernel(ks, mesh, x0, y) * (q - y) / h; };
    auto right = [&](double y) { return radial_kernel(ks, mesh, x0, y) * (y - p) / h; };
    if (singular_adjacent) {
        double toward = std::abs(x0 - p) < std::abs(x0 - q) ? p : q;
        return {gauss_graded(left, p, q, toward, 50, 4),
                gauss_graded(right, p, q, toward, 50, 4)};
    }
    double dist = std::min(std::abs(x0 - p), std::abs(x0 - q));
    if (dist < 2.0 * h) {
        // near cell: subdivide for the peaked kernel
        double l = 0.0, r = 0.0;
        for (int k = 0; k < 8; ++k) {
            double a = p + h * k / 8.0, b = p + h * (k + 1) / 8.0;
            l += gauss(left, a, b, 6);
            r += gauss(right, a, b, 6);
        }
        return {l, r};
    }
    return {gauss(left, p, q, 6), gauss(right, p, q, 6)};
}

}  // namespace

GreenOperator assemble_green_operator(const KernelSet& ks,
                                      std::shared_ptr<const GradedMesh> mesh,
                                      Parallelism par) {
    GreenOperator op;
    op.ks = ks;
    op.mesh = mesh;
    const GradedMesh& m = *mesh;
    const int n = m.n;
    op.weights.assign((size_t)n * n, 0.0);
    op.cell_mass.assign(n, 0.0);
    for (int j = 0; j < n - 1; ++j) {
        double h = m.cell_width(j);
        op.cell_mass[j] += 0.5 * h;
        op.cell_mass[j + 1] += 0.5 * h;
    }

    auto fill_row = [&](int i) {
        double x0 = m.nodes[i];
        double* row = &op.weights[(size_t)i * n];
        for (int j = 0; j < n - 1; ++j) {
            bool adjacent = (j == i - 1 || j == i);
            auto [wl, wr] = cell_hat_integrals(ks, m, x0, m.nodes[j],
                                               m.nodes[j + 1], adjacent);
            row[j] += wl;
            row[j + 1] += wr;
        }
        if (m.domain.kind == DomainKind::RadialBall) {
            // center patch [0, r_1): source treated as constant src[0]
            auto g = [&](double rho) { return radial_kernel(ks, m, x0, rho); };
            row[0] += gauss(g, 0.0, m.nodes[0], 6);
        }
    };

    if (par == Parallelism::OpenMP) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) fill_row(i);
    } else {
        for (int i = 0; i < n; ++i) fill_row(i);
    }
    return op;
}

namespace {

struct SourceSliver {
    double value = 0.0;  // at the outermost node
    double beta = 0.0;   // src ~ value (delta/delta_node)^{-beta}
    double delta_node = 0.0;
};

SourceSliver fit_source_sliver(const GradedMesh& m, std::span<const double> src,
                               bool right_side, double s) {
    const int n = m.n;
    int i0 = right_side ? n - 1 : 0;
    int i1 = right_side ? n - 2 : 1;
    SourceSliver sl;
    sl.delta_node = m.delta[i0];
    sl.value = src[i0];
    if (src[i0] > 0.0 && src[i1] > 0.0) {
        double lr = std::log(m.delta[i1] / m.delta[i0]);
        sl.beta = std::log(src[i1] / src[i0]) / lr;
        if (sl.beta >= 1.0 + s - 0.01)
            throw IntegrabilityError(
                "source grows like delta^-" + std::to_string(sl.beta) +
                " at the boundary; its delta^s-weighted integral diverges "
                "(admissible exponents are below " + std::to_string(1.0 + s) + ")");
        sl.beta = std::clamp(sl.beta, -6.0, 1.0 + s - 0.01);
    }
    return sl;
}

// int over the sliver of G(x_i, y) src_model(y) dy; the kernel contributes
// delta^s and the model delta^-beta, both absorbed by substitution
double green_sliver_integral(const GreenOperator& op, int target,
                             const SourceSliver& sl, bool right_side) {
    const GradedMesh& m = *op.mesh;
    if (sl.value == 0.0 || sl.delta_node <= 0.0) return 0.0;
    double s = op.ks.s;
    double expo = 1.0 / (1.0 + s - std::max(sl.beta, 0.0));
    const GaussRule& rule = gauss_rule(8);
    double x0 = m.nodes[target];
    double sum = 0.0;
    for (size_t k = 0; k < rule.nodes.size(); ++k) {
        double sigma = 0.5 + 0.5 * rule.nodes[k];
        double w = 0.5 * rule.weights[k];
        double delta = sl.delta_node * std::pow(sigma, expo);
        double jac = sl.delta_node * expo * std::pow(sigma, expo - 1.0);
        double y = right_side ? 1.0 - delta : -(1.0 - delta);
        double src = sl.value * std::pow(delta / sl.delta_node, -sl.beta);
        sum += w * jac * src * radial_kernel(op.ks, m, x0, std::abs(y));
    }
    return sum;
}

}  // namespace

std::vector<double> green_apply(const GreenOperator& op,
                                std::span<const double> source) {
    const GradedMesh& m = *op.mesh;
    const int n = m.n;
    if ((int)source.size() != n)
        throw DataError("green_apply: source size does not match mesh");
    const bool interval = m.domain.kind == DomainKind::Interval;
    SourceSliver right = fit_source_sliver(m, source, true, op.ks.s);
    SourceSliver left;
    if (interval) left = fit_source_sliver(m, source, false, op.ks.s);

    std::vector<double> out(n, 0.0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const double* row = &op.weights[(size_t)i * n];
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += row[j] * source[j];
        acc += green_sliver_integral(op, i, right, true);
        if (interval) acc += green_sliver_integral(op, i, left, false);
        out[i] = acc;
    }
    return out;
}

double weighted_source_norm(const GreenOperator& op,
                            std::span<const double> source) {
    const GradedMesh& m = *op.mesh;
    double sum = 0.0;
    for (int j = 0; j < m.n; ++j)
        sum += std::abs(source[j]) * std::pow(m.delta[j], op.ks.s) *
               op.cell_mass[j];
    return sum;
}

double green_apply_reference(const KernelSet& ks, const GradedMesh& mesh,
                             std::span<const double> source, int target) {
    const int n = mesh.n;
    double x0 = mesh.nodes[target];
    double acc = 0.0;
    for (int j = 0; j < n - 1; ++j) {
        double p = mesh.nodes[j], q = mesh.nodes[j + 1], h = q - p;
        double sp = source[j], sq = source[j + 1];
        auto f = [&](double y) {
            double lam = (y - p) / h;
            return radial_kernel(ks, mesh, x0, y) * (sp + lam * (sq - sp));
        };
        if (j == target - 1 || j == target) {
            acc += gauss_graded(f, p, q, x0, 60, 8);
        } else {
            QuadResult r = integrate_adaptive(f, p, q, 1e-11, 0.0, 2000);
            acc += r.value;
        }
    }
    return acc;
}

std::vector<double> poisson_apply(const KernelSet& ks, const GradedMesh& mesh,
                                  const GridFunction& data_carrier,
                                  Parallelism par) {
    const int n = mesh.n;
    std::vector<double> out(n, 0.0);
    if (!data_carrier.has_exterior_data()) return out;

    // head admissibility: |g| ~ t^-a near the boundary must satisfy a < 1-s
    {
        double g1 = std::abs(data_carrier.exterior_value(1e-7));
        double g2 = std::abs(data_carrier.exterior_value(1e-6));
        if (g1 > 0.0 && g2 > 0.0) {
            double a = -std::log(g2 / g1) / std::log(10.0);
            if (a >= 1.0 - ks.s - 1e-3)
                throw DataError(
                    "exterior datum grows like dist^-" + std::to_string(a) +
                    " at the boundary; the weighted admissibility integral "
                    "diverges for exponents >= " + std::to_string(1.0 - ks.s));
        }
    }

    // deep sampling: the Poisson kernel carries an integrable dist^-s factor
    detail::ExteriorSamples samples =
        detail::sample_exterior(data_carrier, 1e4, 1e-40);

    auto eval_node = [&](int i) {
        double r = std::abs(mesh.nodes[i]);
        std::function<double(double)> kernel;
        if (mesh.domain.kind == DomainKind::Interval) {
            double x = mesh.nodes[i];
            kernel = [&ks, x](double t) {
                double y = 1.0 + t;
                return poisson_value(ks, y - x, std::abs(x), y) +
                       poisson_value(ks, y + x, std::abs(x), y);
            };
        } else if (ks.dim == 3) {
            kernel = [&ks, r](double t) {
                double rho = 1.0 + t;
                double ratio = one_minus_sq(r) / ((rho - 1.0) * (rho + 1.0));
                return 4.0 * M_PI * rho * ks.poisson_c * std::pow(ratio, ks.s) /
                       (rho * rho - r * r);
            };
        } else {
            kernel = [&ks, r](double t) {
                double rho = 1.0 + t;
                int N = ks.dim;
                if (N == 1)
                    return poisson_value(ks, rho - r, r, rho) +
                           poisson_value(ks, rho + r, r, rho);
                double omega = 2.0 * std::pow(M_PI, 0.5 * (N - 1)) /
                               std::exp(std::lgamma(0.5 * (N - 1)));
                auto g = [&](double theta) {
                    double R2 = (rho - r) * (rho - r) +
                                4.0 * r * rho * std::pow(std::sin(0.5 * theta), 2);
                    double w = N == 2 ? 1.0 : std::pow(std::sin(theta), N - 2.0);
                    return poisson_value(ks, std::sqrt(R2), r, rho) * w;
                };
                return std::pow(rho, N - 1.0) * gauss_graded(g, 0.0, M_PI, 0.0, 30, 6);
            };
        }
        return detail::exterior_integral(samples, kernel, 1.0 + 2.0 * ks.s);
    };

    if (par == Parallelism::OpenMP) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) out[i] = eval_node(i);
    } else {
        for (int i = 0; i < n; ++i) out[i] = eval_node(i);
    }
    return out;
}

}  // namespace fracblowup
