#pragma once

#include <span>
#include <string>
#include <vector>

#include "fracblowup/nonlinearity.hpp"

namespace fracblowup {

/// The transform phi(u) = int_u^inf dt/sqrt(F(t)), its inverse psi, and the
/// tail metadata. Immutable after construction, incl. the cached phi table.
struct KOProfile {
    NonlinearityModel model;
    GrowthEnvelope envelope;
    double s = 0.5;
    double tail_cutoff = 1e8;   // T: quadrature above, fitted tail beyond
    double tail_exponent = 0.0; // e in F^{-1/2} ~ t^{-e} L(t)^lam
    double tail_log_exponent = 0.0;
    double tail_value = 0.0;    // phi contribution of [T, inf)

    // cached monotone table: u log-spaced, phi decreasing
    std::vector<double> table_u;
    std::vector<double> table_phi;
};

KOProfile make_ko_profile(const NonlinearityModel& model, double s,
                          double tail_cutoff = 1e8);

double phi(const KOProfile& profile, double u);
/// Inverse of phi by table bracketing plus Newton with the exact derivative
/// phi' = -F^{-1/2}.
double psi(const KOProfile& profile, double v);

enum class Condition { L1, L1bis, E, UL1 };
enum class Verdict { Converges, Diverges, Borderline };

std::string to_string(Condition c);
std::string to_string(Verdict v);

struct ConditionReport {
    Condition condition = Condition::L1;
    Verdict verdict = Verdict::Borderline;
    double tail_exponent_of_integrand = 0.0;
    double log_exponent = 0.0;  // second-level discriminator at the critical power
    double margin = 0.0;
    double partial_integral = 0.0;
    std::string details;
};

/// Integrability of (t/f(t))^{1/(2s)} at infinity.
ConditionReport check_L1(const KOProfile& profile);
/// Integrability of f(t) t^{-2/(1-s)} at infinity.
ConditionReport check_E(const KOProfile& profile);
/// L1 norm of the candidate supersolution profile reduces to the same
/// integral as check_L1; reported under its own tag.
ConditionReport check_U_integrability(const KOProfile& profile);

/// Grid checks of the derived two-sided inequalities; margins >= 0 up to
/// rounding when the envelope holds on the sampled range.
struct RatioBoundsReport {
    // (a) 2+m <= t f/F <= 2+M
    double ftech_margin = 0.0;
    // (b) 2/M <= v |psi'|/psi <= 2/m at v = phi(t)
    double psitech_margin = 0.0;
    // (c) psi(cv) <= c^{-2/M} psi(v), c in (0,1)
    double mono_psi_margin = 0.0;
    // (d) 2(2+m)/M^2 <= v^2 f(psi)/(2 psi) <= 2(2+M)/m^2
    double curvature_margin = 0.0;
    double worst_t = 0.0;
    int n_checked = 0;
};
RatioBoundsReport verify_ratio_bounds(const KOProfile& profile,
                                      std::span<const double> t_grid);

enum class Regime { Nonexistence, LargeSolution, L1Escape, UniformBlowup, Unclassified };
std::string to_string(Regime r);

/// Closed-form regime map for f(t) = t^p.
Regime classify_power_regime(double p, double s);

}  // namespace fracblowup
