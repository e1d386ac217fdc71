#include "fracblowup/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fracblowup/errors.hpp"

namespace fracblowup {

FitWindow default_fit_window(const GradedMesh& mesh) {
    FitWindow w;
    w.lo = 4.0 * mesh.min_delta();
    w.hi = 0.1;
    return w;
}

namespace {

// node indices inside the window, sorted by delta, nearest-to-boundary nodes
// dropped
std::vector<int> window_nodes(const GridFunction& gf, FitWindow& w) {
    const GradedMesh& m = *gf.mesh;
    if (w.lo <= 0.0) w = default_fit_window(m);
    std::vector<int> idx;
    for (int i = 0; i < m.n; ++i)
        if (m.delta[i] >= w.lo && m.delta[i] <= w.hi) idx.push_back(i);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return m.delta[a] < m.delta[b]; });
    // drop duplicates in delta (interval meshes are symmetric): keep the
    // boundary-resolved ordering but thin mirrored nodes
    if (w.skip_nearest > 0 && (int)idx.size() > w.skip_nearest)
        idx.erase(idx.begin(), idx.begin() + w.skip_nearest);
    if ((int)idx.size() < 8)
        throw DataError("fit window holds fewer than 8 nodes; refine the mesh "
                        "or widen the window");
    return idx;
}

struct LinFit {
    double a = 0.0, b = 0.0, r2 = 0.0;
};

LinFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    int n = (int)x.size();
    double mx = 0, my = 0;
    for (int i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= n; my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinFit f;
    f.b = sxy / sxx;
    f.a = my - f.b * mx;
    f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

}  // namespace

BoundaryFit boundary_exponent(const GridFunction& gf, FitWindow window) {
    std::vector<int> idx = window_nodes(gf, window);
    const GradedMesh& m = *gf.mesh;
    std::vector<double> x, y;
    for (int i : idx) {
        double u = gf.total_at(i);
        if (!(u > 0.0))
            throw DataError("boundary exponent fit needs positive values on the window");
        x.push_back(std::log(m.delta[i]));
        y.push_back(std::log(u));
    }
    LinFit f = least_squares(x, y);
    BoundaryFit out;
    out.window_lo = window.lo;
    out.window_hi = window.hi;
    out.exponent = f.b;
    out.coefficient = std::exp(f.a);
    out.r_squared = f.r2;
    out.node_count = (int)idx.size();
    return out;
}

TraceFit singular_trace(const GridFunction& gf, double s, FitWindow window) {
    std::vector<int> idx = window_nodes(gf, window);
    const GradedMesh& m = *gf.mesh;
    // delta^{1-s} u = trace + O(delta^{1-s}) for trace-split solutions;
    // regress on delta^{1-s} and keep the intercept
    auto fit_on = [&](const std::vector<int>& nodes) {
        std::vector<double> x, y;
        for (int i : nodes) {
            double w = std::pow(m.delta[i], 1.0 - s);
            x.push_back(w);
            y.push_back(w * gf.total_at(i));
        }
        return least_squares(x, y);
    };
    LinFit full = fit_on(idx);
    std::vector<int> half(idx.begin(), idx.begin() + (idx.size() + 1) / 2);
    TraceFit out;
    out.window_lo = window.lo;
    out.window_hi = window.hi;
    out.node_count = (int)idx.size();
    out.trace = full.a;
    if ((int)half.size() >= 8) {
        LinFit hf = fit_on(half);
        out.half_window_trace = hf.a;
        double scale = std::max({1.0, std::abs(full.a), std::abs(hf.a)});
        out.infinite_flag = hf.a > full.a + 0.25 * scale && hf.a > 1.0;
    } else {
        out.half_window_trace = full.a;
    }
    return out;
}

BBehavReport bbehav_check(const GridFunction& gf, const KOProfile& profile,
                          FitWindow window) {
    std::vector<int> idx = window_nodes(gf, window);
    const GradedMesh& m = *gf.mesh;
    BBehavReport rep;
    rep.window_lo = window.lo;
    rep.window_hi = window.hi;
    rep.node_count = (int)idx.size();
    rep.min_ratio = 1e300;
    double half_delta = std::sqrt(window.lo * window.hi);
    rep.min_ratio_half_window = 1e300;
    std::vector<double> x, y;
    for (int i : idx) {
        double u = gf.total_at(i);
        if (!(u > 0.0))
            throw DataError("bbehav check needs positive values on the window");
        double ratio = phi(profile, u) / std::pow(m.delta[i], profile.s);
        rep.min_ratio = std::min(rep.min_ratio, ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        if (m.delta[i] <= half_delta)
            rep.min_ratio_half_window = std::min(rep.min_ratio_half_window, ratio);
        x.push_back(std::pow(m.delta[i], profile.s));
        y.push_back(ratio);
    }
    LinFit f = least_squares(x, y);
    rep.fitted_limit = f.a;
    rep.pass = rep.min_ratio > 0.0 &&
               rep.min_ratio_half_window >= 0.5 * rep.min_ratio;
    return rep;
}

}  // namespace fracblowup
