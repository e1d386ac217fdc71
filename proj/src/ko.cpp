#include "fracblowup/ko.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracblowup/errors.hpp"
#include "fracblowup/quadrature.hpp"

namespace fracblowup {

namespace {

constexpr double kTableLo = 1e-9;
constexpr double kTableHi = 1e9;
constexpr int kTableSize = 289;  // 16 per decade over 18 decades

double inv_sqrt_F(const KOProfile& p, double t) {
    return 1.0 / std::sqrt(eval_F(p.model, t));
}

// int_a^b F^{-1/2} in the log variable; the integrand is smooth there
double phi_segment(const KOProfile& p, double a, double b, double rel_tol = 1e-12) {
    if (a == b) return 0.0;
    auto g = [&](double y) {
        double t = std::exp(y);
        return t * inv_sqrt_F(p, t);
    };
    QuadResult q = integrate_adaptive(g, std::log(a), std::log(b), rel_tol, 0.0);
    if (!q.converged)
        throw QuadratureError("phi quadrature stalled on [" + std::to_string(a) +
                                  "," + std::to_string(b) + "]",
                              q.error_estimate);
    return q.value;
}

}  // namespace

KOProfile make_ko_profile(const NonlinearityModel& model, double s,
                          double tail_cutoff) {
    if (!(s > 0.0 && s < 1.0)) throw DataError("s must lie in (0,1)");
    KOProfile p;
    p.model = model;
    p.envelope = estimate_growth_envelope(model);
    p.s = s;
    p.tail_cutoff = tail_cutoff;

    PowerLogFit fit = fit_power_log_tail(
        [&](double t) { return inv_sqrt_F(p, t); }, tail_cutoff / 1e3,
        tail_cutoff, 40);
    p.tail_exponent = -fit.exponent;
    p.tail_log_exponent = fit.log_exponent;
    if (!(p.tail_exponent > 1.0 + 1e-6))
        throw DivergentIntegralError(
            "1/sqrt(F) decays like t^-" + std::to_string(p.tail_exponent) +
            "; the transform phi is not finite");
    // int_T^inf t^-e L^lam dt ~ F(T)^{-1/2} T/(e-1) with first log correction
    double T = tail_cutoff, e = p.tail_exponent, lam = p.tail_log_exponent;
    p.tail_value = inv_sqrt_F(p, T) * T / (e - 1.0) *
                   (1.0 + lam / ((e - 1.0) * std::log(T)));

    p.table_u = log_spaced(kTableLo, kTableHi, kTableSize);
    p.table_phi.resize(kTableSize);
    double acc = phi_segment(p, p.table_u.back(), tail_cutoff) + p.tail_value;
    p.table_phi.back() = acc;
    for (int i = kTableSize - 2; i >= 0; --i) {
        acc += phi_segment(p, p.table_u[i], p.table_u[i + 1]);
        p.table_phi[i] = acc;
    }
    return p;
}

double phi(const KOProfile& profile, double u) {
    if (!(u > 0.0)) throw DataError("phi needs u > 0");
    if (!(profile.tail_exponent > 1.0))
        throw DivergentIntegralError("phi diverges: tail exponent <= 1");
    const auto& tu = profile.table_u;
    if (u >= tu.back())
        return phi_segment(profile, u, profile.tail_cutoff) + profile.tail_value;
    if (u < tu.front())
        return profile.table_phi.front() + phi_segment(profile, u, tu.front());
    auto it = std::upper_bound(tu.begin(), tu.end(), u);
    int i = (int)(it - tu.begin());  // first anchor above u
    return profile.table_phi[i] + phi_segment(profile, u, tu[i]);
}

double psi(const KOProfile& profile, double v) {
    if (!(v > 0.0)) throw DataError("psi needs v > 0");
    const auto& tphi = profile.table_phi;
    const auto& tu = profile.table_u;
    if (v > tphi.front() || v < tphi.back()) {
        std::ostringstream os;
        os << "psi(" << v << ") outside representable range; attained bracket phi in ["
           << tphi.back() << ", " << tphi.front() << "] for u in [" << tu.front()
           << ", " << tu.back() << "]";
        throw OutOfRangeError(os.str());
    }
    // table is decreasing in u; locate bracket then polish with Newton using
    // psi' through phi' = -F^{-1/2}
    int lo = 0, hi = (int)tphi.size() - 1;
    while (hi - lo > 1) {
        int mid = (lo + hi) / 2;
        (tphi[mid] >= v ? lo : hi) = mid;
    }
    double ulo = tu[lo], uhi = tu[hi];
    double u = std::sqrt(ulo * uhi);
    double fv = phi(profile, u) - v;
    for (int iter = 0; iter < 60; ++iter) {
        if (std::abs(fv) <= 1e-12 * v) break;
        double step = fv * std::sqrt(eval_F(profile.model, u));
        double next = u + step;  // phi decreasing: fv>0 means u too small
        if (!(next > ulo && next < uhi)) {
            // bisection fallback keeps the bracket
            if (fv > 0.0) ulo = u; else uhi = u;
            next = std::sqrt(ulo * uhi);
        } else {
            if (fv > 0.0) ulo = u; else uhi = u;
        }
        u = next;
        fv = phi(profile, u) - v;
    }
    return u;
}

std::string to_string(Condition c) {
    switch (c) {
        case Condition::L1: return "L1";
        case Condition::L1bis: return "L1bis";
        case Condition::E: return "E";
        case Condition::UL1: return "UL1";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Converges: return "Converges";
        case Verdict::Diverges: return "Diverges";
        case Verdict::Borderline: return "Borderline";
    }
    return "?";
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::Nonexistence: return "Nonexistence";
        case Regime::LargeSolution: return "LargeSolution";
        case Regime::L1Escape: return "L1Escape";
        case Regime::UniformBlowup: return "UniformBlowup";
        case Regime::Unclassified: return "Unclassified";
    }
    return "?";
}

namespace {

constexpr double kBorderBand = 0.02;

// Tail-exponent classification of int^inf g dt against the critical
// exponent -1; when the power exponent sits inside the borderline band the
// fitted log-weight exponent decides (Bertrand-type refinement).
ConditionReport classify_tail(Condition cond, const Integrand& g,
                              double fit_lo, double fit_hi) {
    ConditionReport rep;
    rep.condition = cond;
    PowerLogFit fit = fit_power_log_tail(g, fit_lo, fit_hi, 48);
    rep.tail_exponent_of_integrand = fit.exponent;
    rep.log_exponent = fit.log_exponent;
    std::ostringstream det;
    det << "fit on [" << fit_lo << ", " << fit_hi << "]: exponent "
        << fit.exponent << ", log exponent " << fit.log_exponent;
    if (fit.exponent < -1.0 - kBorderBand) {
        rep.verdict = Verdict::Converges;
        rep.margin = -1.0 - fit.exponent;
    } else if (fit.exponent > -1.0 + kBorderBand) {
        rep.verdict = Verdict::Diverges;
        rep.margin = fit.exponent + 1.0;
    } else if (fit.log_exponent < -1.0 - kBorderBand) {
        rep.verdict = Verdict::Converges;
        rep.margin = -1.0 - fit.log_exponent;
        det << " [log-critical]";
    } else if (fit.log_exponent > -1.0 + kBorderBand) {
        rep.verdict = Verdict::Diverges;
        rep.margin = fit.log_exponent + 1.0;
        det << " [log-critical]";
    } else {
        rep.verdict = Verdict::Borderline;
        rep.margin = std::abs(fit.exponent + 1.0);
        det << " [within borderline band " << kBorderBand << "]";
    }
    QuadResult part = integrate_adaptive(g, 1.0, fit_hi, 1e-8);
    rep.partial_integral = part.value;
    rep.details = det.str();
    return rep;
}

}  // namespace

ConditionReport check_L1(const KOProfile& profile) {
    auto g = [&](double t) {
        return std::pow(t / eval_f(profile.model, t), 1.0 / (2.0 * profile.s));
    };
    double hi = 1e10;
    if (profile.model.family == Family::Tabulated)
        hi = std::exp(profile.model.table_t.back()) * 0.99;
    return classify_tail(Condition::L1bis, g, std::max(1e4, hi * 1e-6), hi);
}

ConditionReport check_E(const KOProfile& profile) {
    auto g = [&](double t) {
        return eval_f(profile.model, t) * std::pow(t, -2.0 / (1.0 - profile.s));
    };
    double hi = 1e10;
    if (profile.model.family == Family::Tabulated)
        hi = std::exp(profile.model.table_t.back()) * 0.99;
    return classify_tail(Condition::E, g, std::max(1e4, hi * 1e-6), hi);
}

ConditionReport check_U_integrability(const KOProfile& profile) {
    ConditionReport rep = check_L1(profile);
    rep.condition = Condition::UL1;
    rep.details += "; U in L1 reduces to the same tail integral";
    return rep;
}

RatioBoundsReport verify_ratio_bounds(const KOProfile& profile,
                                      std::span<const double> t_grid) {
    const double m = profile.envelope.m, M = profile.envelope.M;
    RatioBoundsReport rep;
    rep.ftech_margin = rep.psitech_margin = rep.mono_psi_margin =
        rep.curvature_margin = 1e300;
    const double cs[] = {0.25, 0.5, 0.8};
    for (double t : t_grid) {
        if (!(t > 0.0)) throw DataError("ratio bounds grid must be positive");
        double f = eval_f(profile.model, t);
        double F = eval_F(profile.model, t);
        double ratioF = t * f / F;
        double margin_a =
            std::min(ratioF - (2.0 + m), (2.0 + M) - ratioF) / ratioF;
        double v = phi(profile, t);
        double u = t;  // psi(v) = t by construction
        double ratio_psi = v * std::sqrt(F) / u;  // v |psi'(v)| / psi(v)
        double margin_b = std::min(ratio_psi - 2.0 / M, 2.0 / m - ratio_psi) /
                          ratio_psi;
        double margin_c = 1e300;
        for (double c : cs) {
            double lhs = psi(profile, c * v);
            double rhs = std::pow(c, -2.0 / M) * u;
            margin_c = std::min(margin_c, (rhs - lhs) / rhs);
        }
        double curv = v * v * f / (2.0 * u);
        double lo_d = 2.0 * (2.0 + m) / (M * M);
        double hi_d = 2.0 * (2.0 + M) / (m * m);
        double margin_d = std::min(curv - lo_d, hi_d - curv) / curv;
        double worst = std::min(std::min(margin_a, margin_b),
                                std::min(margin_c, margin_d));
        if (worst < std::min(std::min(rep.ftech_margin, rep.psitech_margin),
                             std::min(rep.mono_psi_margin, rep.curvature_margin)))
            rep.worst_t = t;
        rep.ftech_margin = std::min(rep.ftech_margin, margin_a);
        rep.psitech_margin = std::min(rep.psitech_margin, margin_b);
        rep.mono_psi_margin = std::min(rep.mono_psi_margin, margin_c);
        rep.curvature_margin = std::min(rep.curvature_margin, margin_d);
        ++rep.n_checked;
    }
    return rep;
}

Regime classify_power_regime(double p, double s) {
    if (!(p > 0.0) || !(s > 0.0 && s < 1.0))
        throw DataError("classify_power_regime needs p > 0, s in (0,1)");
    double upper = 1.0 + 2.0 * s / (1.0 - s);
    if (p >= upper) return Regime::Nonexistence;
    if (p > 1.0 + 2.0 * s) return Regime::LargeSolution;
    if (p <= 1.0) return Regime::UniformBlowup;
    if (p < 1.0 + s) return Regime::L1Escape;
    return Regime::Unclassified;  // [1+s, 1+2s]: no claim made
}

}  // namespace fracblowup
