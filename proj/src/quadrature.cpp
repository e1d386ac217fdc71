#include "fracblowup/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>

#include "fracblowup/errors.hpp"

namespace fracblowup {

namespace {

GaussRule make_gauss(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double tol = 1e-15;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < tol) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    return r;
}

}  // namespace

const GaussRule& gauss_rule(int order) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, make_gauss(order)).first;
    return it->second;
}

double gauss(const Integrand& f, double a, double b, int order) {
    const GaussRule& r = gauss_rule(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < order; ++i) sum += r.weights[i] * f(mid + half * r.nodes[i]);
    return half * sum;
}

namespace {

struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel eval_panel(const Integrand& f, double a, double b) {
    double lo = gauss(f, a, b, 10);
    double hi = gauss(f, a, b, 20);
    return {a, b, hi, std::abs(hi - lo)};
}

}  // namespace

QuadResult integrate_adaptive(const Integrand& f, double a, double b,
                              double rel_tol, double abs_tol, int max_panels) {
    QuadResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::priority_queue<Panel> heap;
    Panel p0 = eval_panel(f, a, b);
    heap.push(p0);
    double total = p0.value, total_err = p0.err;
    res.evaluations = 30;
    int panels = 1;
    while (panels < max_panels) {
        double target = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= target && target > 0.0) break;
        if (total_err == 0.0) break;
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at floating-point resolution; keep its estimate
            total_err -= worst.err;
            continue;
        }
        Panel l = eval_panel(f, worst.a, mid);
        Panel r = eval_panel(f, mid, worst.b);
        total += l.value + r.value - worst.value;
        total_err += l.err + r.err - worst.err;
        heap.push(l);
        heap.push(r);
        res.evaluations += 60;
        ++panels;
    }
    res.value = total;
    res.error_estimate = total_err;
    res.converged =
        total_err <= std::max(abs_tol, rel_tol * std::abs(total)) + 1e-300;
    return res;
}

QuadResult integrate_to_infinity(const Integrand& f, double a, double rel_tol,
                                 double tail_cutoff) {
    if (a <= 0.0) throw DataError("integrate_to_infinity requires a > 0");
    double T = std::max(tail_cutoff, 100.0 * a);
    // log substitution t = e^y removes the scale disparity
    auto g = [&](double y) {
        double t = std::exp(y);
        return t * f(t);
    };
    QuadResult body = integrate_adaptive(g, std::log(a), std::log(T), rel_tol);
    // analytic power tail fitted at the cutoff
    PowerLogFit fit = fit_power_tail(f, T / 16.0, T, 16);
    double tail = 0.0;
    if (fit.exponent < -1.0 - 1e-9) {
        tail = -f(T) * T / (fit.exponent + 1.0);
    } else {
        throw DivergentIntegralError(
            "tail exponent " + std::to_string(fit.exponent) +
            " >= -1 at cutoff; integral diverges");
    }
    body.value += tail;
    return body;
}

double gauss_graded(const Integrand& f, double a, double b, double toward,
                    int levels, int order) {
    const bool at_left = std::abs(toward - a) <= std::abs(toward - b);
    double lo = a, hi = b;
    double sum = 0.0;
    // geometric bisection toward the singular endpoint; the innermost
    // sliver is dropped (its width is ~2^-levels of the interval)
    for (int l = 0; l < levels; ++l) {
        double mid = at_left ? lo + 0.5 * (hi - lo) : hi - 0.5 * (hi - lo);
        if (at_left) {
            sum += gauss(f, mid, hi, order);
            hi = mid;
        } else {
            sum += gauss(f, lo, mid, order);
            lo = mid;
        }
        if (hi - lo <= 0.0) break;
    }
    return sum;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    if (lo <= 0.0 || hi <= lo || n < 2) throw DataError("log_spaced: bad range");
    std::vector<double> t(n);
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        t[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    t.front() = lo;
    t.back() = hi;
    return t;
}

namespace {

PowerLogFit fit_impl(const Integrand& g, double t_lo, double t_hi, int n,
                     bool with_log_basis) {
    if (t_lo <= 1.0 && with_log_basis)
        throw DataError("power-log tail fit needs t_lo > 1");
    std::vector<double> ts = log_spaced(t_lo, t_hi, n);
    std::vector<double> x1(n), x2(n), y(n);
    for (int i = 0; i < n; ++i) {
        double v = g(ts[i]);
        if (!(v > 0.0) || !std::isfinite(v))
            throw DataError("tail fit: integrand not positive/finite at t=" +
                            std::to_string(ts[i]));
        x1[i] = std::log(ts[i]);
        x2[i] = with_log_basis ? std::log(std::log(ts[i])) : 0.0;
        y[i] = std::log(v);
    }
    // centered normal equations in long double; the {1, ln t, ln ln t}
    // basis is mildly ill-conditioned on wide ranges
    auto mean = [&](const std::vector<double>& v) {
        long double s = 0;
        for (double u : v) s += u;
        return (double)(s / v.size());
    };
    double m1 = mean(x1), m2 = mean(x2), my = mean(y);
    long double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (int i = 0; i < n; ++i) {
        long double d1 = x1[i] - m1, d2 = x2[i] - m2, dy = y[i] - my;
        a11 += d1 * d1;
        a12 += d1 * d2;
        a22 += d2 * d2;
        b1 += d1 * dy;
        b2 += d2 * dy;
    }
    PowerLogFit fit;
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    fit.n_samples = n;
    if (with_log_basis) {
        long double det = a11 * a22 - a12 * a12;
        if (std::abs((double)det) < 1e-14 * (double)(a11 * a22 + 1e-300)) {
            // degenerate second basis; fall back to pure power
            fit.exponent = (double)(b1 / a11);
            fit.log_exponent = 0.0;
        } else {
            fit.exponent = (double)((b1 * a22 - b2 * a12) / det);
            fit.log_exponent = (double)((a11 * b2 - a12 * b1) / det);
        }
    } else {
        fit.exponent = (double)(b1 / a11);
        fit.log_exponent = 0.0;
    }
    fit.c = my - fit.exponent * m1 - fit.log_exponent * m2;
    long double ss = 0;
    for (int i = 0; i < n; ++i) {
        double r = y[i] - (fit.c + fit.exponent * x1[i] + fit.log_exponent * x2[i]);
        ss += (long double)r * r;
    }
    fit.rms_residual = std::sqrt((double)(ss / n));
    return fit;
}

}  // namespace

PowerLogFit fit_power_log_tail(const Integrand& g, double t_lo, double t_hi,
                               int n) {
    return fit_impl(g, t_lo, t_hi, n, true);
}

PowerLogFit fit_power_tail(const Integrand& g, double t_lo, double t_hi, int n) {
    return fit_impl(g, t_lo, t_hi, n, false);
}

}  // namespace fracblowup
