#pragma once

// Internal helper: log-dyadic quadrature of integrals over the exterior of
// the domain, int_0^inf g(t) k(t) dt, where t is the boundary distance of the
// exterior point, g the exterior datum and k a kernel with power tail
// ~ t^{-1-2s}. The datum is sampled once; the kernel varies per target node.

#include <cmath>
#include <functional>
#include <vector>

#include "fracblowup/mesh.hpp"
#include "fracblowup/quadrature.hpp"

namespace fracblowup::detail {

struct ExteriorSamples {
    std::vector<double> t;
    std::vector<double> w;  // quadrature weights in t
    std::vector<double> g;  // datum values
    double rmax = 100.0;
    double g_rmax = 0.0;
    double decay = 2.0;  // fitted |g| ~ t^-decay beyond rmax
    bool all_zero = true;
};

inline ExteriorSamples sample_exterior(const GridFunction& gf, double rmax,
                                       double tmin = 1e-12) {
    ExteriorSamples out;
    out.rmax = rmax;
    if (!gf.has_exterior_data()) return out;
    const GaussRule& rule = gauss_rule(6);
    int octaves = (int)std::ceil(std::log2(rmax / tmin));
    double a = tmin;
    for (int k = 0; k < octaves; ++k) {
        double b = std::min(2.0 * a, rmax);
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            double ti = mid + half * rule.nodes[i];
            out.t.push_back(ti);
            out.w.push_back(half * rule.weights[i]);
            double gi = gf.exterior_value(ti);
            out.g.push_back(gi);
            if (gi != 0.0) out.all_zero = false;
        }
        a = b;
        if (a >= rmax) break;
    }
    double g_half = std::abs(gf.exterior_value(0.5 * rmax));
    out.g_rmax = gf.exterior_value(rmax);
    if (g_half > 0.0 && std::abs(out.g_rmax) > 0.0)
        out.decay = std::max(0.0, -std::log(std::abs(out.g_rmax) / g_half) /
                                      std::log(2.0));
    return out;
}

/// Sum of datum-against-kernel plus a fitted power tail beyond rmax.
/// kernel_decay is the tail exponent of k (1+2s for the PV kernel).
inline double exterior_integral(const ExteriorSamples& samples,
                                const std::function<double(double)>& kernel,
                                double kernel_decay) {
    if (samples.all_zero) return 0.0;
    double sum = 0.0;
    for (size_t i = 0; i < samples.t.size(); ++i)
        if (samples.g[i] != 0.0)
            sum += samples.w[i] * samples.g[i] * kernel(samples.t[i]);
    double total_decay = samples.decay + kernel_decay;
    if (samples.g_rmax != 0.0 && total_decay > 1.0)
        sum += samples.g_rmax * kernel(samples.rmax) * samples.rmax /
               (total_decay - 1.0);
    return sum;
}

}  // namespace fracblowup::detail
