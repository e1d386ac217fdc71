#include "fracblowup/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fracblowup/errors.hpp"
#include "fracblowup/quadrature.hpp"

namespace fracblowup {

NonlinearityModel NonlinearityModel::power(double p, double scale) {
    if (!(p > 0.0)) throw DataError("power family needs p > 0");
    NonlinearityModel m;
    m.family = Family::Power;
    m.p = p;
    m.scale = scale;
    m.f_prime_available = true;
    return m;
}

NonlinearityModel NonlinearityModel::power_log(double p, double alpha,
                                               double scale) {
    if (!(p > 0.0)) throw DataError("power-log family needs p > 0");
    if (!(p + std::min(alpha, 0.0) > 0.0))
        throw DataError("power-log family needs p + min(alpha,0) > 0 so f(0)=0");
    NonlinearityModel m;
    m.family = Family::PowerLog;
    m.p = p;
    m.alpha = alpha;
    m.scale = scale;
    m.f_prime_available = true;
    return m;
}

namespace {

// Fritsch-Carlson monotone cubic slopes for (x, y) strictly increasing.
std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
    const int n = (int)x.size();
    std::vector<double> h(n - 1), d(n - 1), m(n);
    for (int i = 0; i < n - 1; ++i) {
        h[i] = x[i + 1] - x[i];
        d[i] = (y[i + 1] - y[i]) / h[i];
    }
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for (int i = 1; i < n - 1; ++i) {
        if (d[i - 1] * d[i] <= 0.0)
            m[i] = 0.0;
        else {
            double w1 = 2.0 * h[i] + h[i - 1], w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    return m;
}

double pchip_eval(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& m, double xi, double* deriv) {
    auto it = std::upper_bound(x.begin(), x.end(), xi);
    int i = std::clamp((int)(it - x.begin()) - 1, 0, (int)x.size() - 2);
    double h = x[i + 1] - x[i], t = (xi - x[i]) / h;
    double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
    double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
    double v = h00 * y[i] + h * h10 * m[i] + h01 * y[i + 1] + h * h11 * m[i + 1];
    if (deriv) {
        double d00 = 6 * t * (t - 1), d10 = (1 - t) * (1 - 3 * t);
        double d01 = -d00, d11 = t * (3 * t - 2);
        *deriv = (d00 * y[i] + d01 * y[i + 1]) / h + d10 * m[i] + d11 * m[i + 1];
    }
    return v;
}

}  // namespace

NonlinearityModel NonlinearityModel::tabulated(std::vector<double> t,
                                               std::vector<double> f) {
    if (t.size() != f.size() || t.size() < 4)
        throw DataError("tabulated model needs >= 4 matching samples");
    for (size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0) || !(f[i] > 0.0))
            throw DataError("tabulated samples must be positive");
        if (i > 0 && !(t[i] > t[i - 1]))
            throw DataError("tabulated t must be strictly increasing");
        if (i > 0 && !(f[i] > f[i - 1]))
            throw HypothesisViolation("tabulated f not strictly increasing at t=" +
                                          std::to_string(t[i]),
                                      t[i]);
    }
    NonlinearityModel m;
    m.family = Family::Tabulated;
    m.f_prime_available = false;
    m.table_t.resize(t.size());
    m.table_f.resize(f.size());
    for (size_t i = 0; i < t.size(); ++i) {
        m.table_t[i] = std::log(t[i]);
        m.table_f[i] = std::log(f[i]);
    }
    m.table_d = pchip_slopes(m.table_t, m.table_f);
    return m;
}

NonlinearityModel NonlinearityModel::tabulated_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open nonlinearity table " + path);
    std::vector<double> t, f;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        double a, b;
        char comma;
        if (ls >> a >> comma >> b) {
            t.push_back(a);
            f.push_back(b);
        }
    }
    return tabulated(std::move(t), std::move(f));
}

std::string NonlinearityModel::describe() const {
    std::ostringstream os;
    switch (family) {
        case Family::Power: os << "power(p=" << p << ")"; break;
        case Family::PowerLog:
            os << "powerlog(p=" << p << ", alpha=" << alpha << ")";
            break;
        case Family::Tabulated:
            os << "tabulated(" << table_t.size() << " samples)";
            break;
    }
    if (scale != 1.0) os << " x" << scale;
    return os.str();
}

double eval_f(const NonlinearityModel& model, double t) {
    if (!(t >= 0.0)) throw DataError("eval_f needs t >= 0");
    if (t == 0.0) return 0.0;
    switch (model.family) {
        case Family::Power:
            return model.scale * std::pow(t, model.p);
        case Family::PowerLog:
            return model.scale * std::pow(t, model.p) *
                   std::pow(std::log1p(t), model.alpha);
        case Family::Tabulated: {
            double lt = std::log(t);
            if (lt < model.table_t.front() || lt > model.table_t.back())
                throw OutOfRangeError("tabulated f evaluated at t=" +
                                      std::to_string(t) + " outside sampled range");
            return model.scale *
                   std::exp(pchip_eval(model.table_t, model.table_f, model.table_d,
                                       lt, nullptr));
        }
    }
    return 0.0;
}

double eval_f_prime(const NonlinearityModel& model, double t) {
    if (!(t > 0.0)) throw DataError("eval_f_prime needs t > 0");
    switch (model.family) {
        case Family::Power:
            return model.scale * model.p * std::pow(t, model.p - 1.0);
        case Family::PowerLog: {
            double L = std::log1p(t);
            return model.scale *
                   (model.p * std::pow(t, model.p - 1.0) * std::pow(L, model.alpha) +
                    std::pow(t, model.p) * model.alpha * std::pow(L, model.alpha - 1.0) /
                        (1.0 + t));
        }
        case Family::Tabulated: {
            // relative central difference; preserves accuracy across the log grid
            double h = t * 1e-6;
            return (eval_f(model, t + h) - eval_f(model, t - h)) / (2.0 * h);
        }
    }
    return 0.0;
}

double eval_F(const NonlinearityModel& model, double t, double rel_tol) {
    if (!(t >= 0.0)) throw DataError("eval_F needs t >= 0");
    if (t == 0.0) return 0.0;
    if (model.family == Family::Power)
        return model.scale * std::pow(t, model.p + 1.0) / (model.p + 1.0);

    // leading behavior f ~ c tau^gamma near 0; absorb it so the integrand is
    // smooth at the origin
    double gamma = model.p + (model.family == Family::PowerLog ? model.alpha : 0.0);
    if (model.family == Family::Tabulated) {
        // integrate from the table start with a power-fit head
        double t0 = std::exp(model.table_t.front());
        double f0 = std::exp(model.table_f.front()) * model.scale;
        double e0 = model.table_d.front();  // local log-log slope
        if (t <= t0) return f0 * std::pow(t / t0, e0) * t / (e0 + 1.0);
        double head = f0 * t0 / (e0 + 1.0);
        QuadResult q = integrate_adaptive([&](double tau) { return eval_f(model, tau); },
                                          t0, t, rel_tol);
        if (!q.converged)
            throw QuadratureError("eval_F quadrature did not converge",
                                  q.error_estimate / std::max(1e-300, std::abs(q.value)));
        return head + q.value;
    }

    double expo = 1.0 / (gamma + 1.0);
    auto g = [&](double sigma) {
        double tau = t * std::pow(sigma, expo);
        return eval_f(model, tau) * t * expo * std::pow(sigma, expo - 1.0);
    };
    QuadResult q = integrate_adaptive(g, 0.0, 1.0, rel_tol);
    if (!q.converged)
        throw QuadratureError("eval_F quadrature did not converge",
                              q.error_estimate / std::max(1e-300, std::abs(q.value)));
    return q.value;
}

GrowthEnvelope estimate_growth_envelope(const NonlinearityModel& model,
                                        std::pair<double, double> t_range,
                                        int n_samples) {
    if (!(t_range.first > 0.0 && t_range.second > t_range.first))
        throw DataError("envelope range must satisfy 0 < lo < hi");
    if (n_samples < 2) throw DataError("envelope needs >= 2 samples");
    double lo = t_range.first, hi = t_range.second;
    if (model.family == Family::Tabulated) {
        // derivative stencil needs margin inside the table
        lo = std::max(lo, std::exp(model.table_t.front()) * 1.01);
        hi = std::min(hi, std::exp(model.table_t.back()) * 0.99);
        if (!(hi > lo)) throw DataError("envelope range outside tabulated support");
    }
    std::vector<double> grid = log_spaced(lo, hi, n_samples);
    GrowthEnvelope env;
    env.sample_min = lo;
    env.sample_max = hi;
    env.n_samples = n_samples;
    double rmin = 0.0, rmax = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        double t = grid[i];
        double r = t * eval_f_prime(model, t) / eval_f(model, t);
        if (i == 0 || r < rmin) {
            rmin = r;
            env.argmin_t = t;
        }
        if (i == 0 || r > rmax) {
            rmax = r;
            env.argmax_t = t;
        }
    }
    if (!(rmin > 1.0))
        throw HypothesisViolation(
            "t f'(t)/f(t) = " + std::to_string(rmin) + " <= 1 at t = " +
                std::to_string(env.argmin_t) +
                "; no positive growth envelope exists (f at most linear there)",
            env.argmin_t);
    env.m = rmin - 1.0;
    env.M = rmax - 1.0;
    std::ostringstream os;
    os << n_samples << " log-spaced samples on [" << lo << ", " << hi << "]";
    env.grid_description = os.str();
    return env;
}

ScalingReport check_monotone_scaling(const NonlinearityModel& model,
                                     const GrowthEnvelope& envelope, double c,
                                     std::span<const double> t_grid) {
    if (!(c >= 1.0)) throw DataError("monotone scaling check needs c >= 1");
    ScalingReport rep;
    rep.c = c;
    for (double t : t_grid) {
        if (!(t > 0.0)) throw DataError("monotone scaling grid must be positive");
        double ft = eval_f(model, t), fct = eval_f(model, c * t);
        double lo = std::pow(c, 1.0 + envelope.m) * ft;
        double hi = std::pow(c, 1.0 + envelope.M) * ft;
        double viol = std::max((lo - fct) / fct, (fct - hi) / fct);
        if (viol > rep.max_rel_violation) {
            rep.max_rel_violation = viol;
            rep.worst_t = t;
        }
        ++rep.n_checked;
    }
    rep.max_rel_violation = std::max(rep.max_rel_violation, 0.0);
    return rep;
}

std::optional<LinearBound> check_linear_bound(const NonlinearityModel& model,
                                              std::pair<double, double> t_range) {
    double lo = t_range.first, hi = t_range.second;
    if (model.family == Family::Tabulated) {
        lo = std::max(lo, std::exp(model.table_t.front()) * 1.01);
        hi = std::min(hi, std::exp(model.table_t.back()) * 0.99);
    }
    // smallest a with f <= a(1 + t) on the sampled range
    double sup = 0.0;
    for (double t : log_spaced(lo, hi, 512))
        sup = std::max(sup, eval_f(model, t) / (1.0 + t));
    LinearBound bound;
    bound.a = sup * (1.0 + 1e-12);
    bound.b = bound.a;
    // tail behavior decides whether the bound can extend to infinity
    const double band = 0.02;
    try {
        PowerLogFit fit = fit_power_log_tail(
            [&](double t) { return eval_f(model, t); }, std::max(hi / 100.0, 2.0),
            hi, 32);
        if (fit.exponent > 1.0 + band)
            bound.range_limited = true;
        else if (fit.exponent < 1.0 - band)
            bound.range_limited = false;
        else
            bound.range_limited = fit.log_exponent > band;
    } catch (const Error&) {
        bound.range_limited = true;
    }
    return bound;
}

}  // namespace fracblowup
