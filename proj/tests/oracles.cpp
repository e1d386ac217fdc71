#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "fracblowup/quadrature.hpp"
#include "fracblowup/special.hpp"

namespace oracles {

using fracblowup::gauss;
using fracblowup::integrate_adaptive;
using fracblowup::QuadResult;

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int panels, int order) {
    double sum = 0.0;
    for (int k = 0; k < panels; ++k) {
        double p = a + (b - a) * k / panels;
        double q = a + (b - a) * (k + 1) / panels;
        sum += gauss(f, p, q, order);
    }
    return sum;
}

double pv_fraclap(const std::function<double(double)>& u, double x, double s,
                  double rel_tol) {
    auto val = [&](double y) { return (y <= -1.0 || y >= 1.0) ? 0.0 : u(y); };
    auto second_diff = [&](double z) {
        return 2.0 * val(x) - val(x + z) - val(x - z);
    };
    // analytic head from a numerical second derivative
    const double z0 = 1e-7;
    double h = 1e-4;
    double upp = (u(x + h) - 2.0 * u(x) + u(x - h)) / (h * h);
    double head = -upp * std::pow(z0, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
    // adaptive body split at the boundary-crossing kinks
    auto g = [&](double lz) {
        double z = std::exp(lz);
        return z * second_diff(z) * std::pow(z, -1.0 - 2.0 * s);
    };
    double kink1 = 1.0 - x, kink2 = 1.0 + x;
    if (kink1 > kink2) std::swap(kink1, kink2);
    double Z = kink2 * 1.5 + 1.0;
    double body = 0.0;
    double pts[4] = {z0, kink1, kink2, Z};
    for (int seg = 0; seg < 3; ++seg) {
        QuadResult r = integrate_adaptive(g, std::log(pts[seg]),
                                          std::log(pts[seg + 1]), rel_tol, 1e-14);
        body += r.value;
    }
    double tail = 2.0 * val(x) * std::pow(Z, -2.0 * s) / (2.0 * s);
    return fracblowup::fraclap_normalization(1, s) * (head + body + tail);
}

double phi_brute(const std::function<double(double)>& F, double u, double cutoff) {
    auto g = [&](double ly) {
        double t = std::exp(ly);
        return t / std::sqrt(F(t));
    };
    QuadResult r = integrate_adaptive(g, std::log(u), std::log(cutoff), 1e-12, 0.0);
    // monotone tail bound from the local decay exponent at the cutoff
    double f1 = 1.0 / std::sqrt(F(cutoff / 2.0)), f2 = 1.0 / std::sqrt(F(cutoff));
    double e = -std::log(f2 / f1) / std::log(2.0);
    if (!(e > 1.0)) throw std::runtime_error("phi_brute: tail does not decay");
    return r.value + f2 * cutoff / (e - 1.0);
}

double green_inner_brute(double r0, double s, int dim) {
    // t = z^{1/s} removes the endpoint singularity
    auto g = [&](double z) {
        return std::pow(1.0 + std::pow(z, 1.0 / s), -0.5 * dim) / s;
    };
    double zmax = std::pow(r0, s);
    if (zmax <= 2.0) {
        QuadResult r = integrate_adaptive(g, 0.0, zmax, 1e-13, 1e-300);
        return r.value;
    }
    QuadResult head = integrate_adaptive(g, 0.0, 2.0, 1e-13, 1e-300);
    auto glog = [&](double lz) {
        double z = std::exp(lz);
        return z * g(z);
    };
    QuadResult body =
        integrate_adaptive(glog, std::log(2.0), std::log(zmax), 1e-13, 1e-300);
    return head.value + body.value;
}

}  // namespace oracles
