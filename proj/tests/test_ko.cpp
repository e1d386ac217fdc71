#include <cmath>

#include "doctest.h"
#include "fracblowup/errors.hpp"
#include "fracblowup/ko.hpp"
#include "fracblowup/quadrature.hpp"
#include "oracles.hpp"

using namespace fracblowup;

namespace {
double phi_power_closed(double p, double u) {
    // int_u^inf sqrt(p+1) t^{-(p+1)/2} dt
    return 2.0 * std::sqrt(p + 1.0) / (p - 1.0) * std::pow(u, 0.5 * (1.0 - p));
}
}  // namespace

TEST_CASE("phi matches the cubic closed form 2/u") {
    KOProfile prof = make_ko_profile(NonlinearityModel::power(3.0), 0.5);
    CHECK(phi(prof, 1.0) == doctest::Approx(2.0).epsilon(1e-9));
    for (double u : log_spaced(1e-3, 1e3, 25))
        CHECK(phi(prof, u) == doctest::Approx(2.0 / u).epsilon(1e-9));
}

TEST_CASE("phi matches the power closed form at several exponents") {
    for (double p : {2.5, 4.0, 5.0}) {
        KOProfile prof = make_ko_profile(NonlinearityModel::power(p), 0.5);
        for (double u : log_spaced(1e-2, 1e2, 9))
            CHECK(phi(prof, u) ==
                  doctest::Approx(phi_power_closed(p, u)).epsilon(1e-9));
    }
}

TEST_CASE("phi for a log-weighted model against brute quadrature") {
    NonlinearityModel m = NonlinearityModel::power_log(3.0, 1.0);
    KOProfile prof = make_ko_profile(m, 0.5);
    auto F = [&](double t) { return eval_F(m, t); };
    double want = oracles::phi_brute(F, 10.0);
    CHECK(phi(prof, 10.0) == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("psi inverts phi") {
    KOProfile prof = make_ko_profile(NonlinearityModel::power(3.0), 0.5);
    CHECK(psi(prof, 2.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(psi(prof, 0.002) == doctest::Approx(1000.0).epsilon(1e-9));
    KOProfile plog = make_ko_profile(NonlinearityModel::power_log(3.0, 1.0), 0.5);
    double v10 = phi(plog, 10.0);
    CHECK(psi(plog, v10) == doctest::Approx(10.0).epsilon(1e-8));
}

TEST_CASE("round trip across six decades") {
    for (auto model : {NonlinearityModel::power(2.5),
                       NonlinearityModel::power_log(3.0, 1.0)}) {
        KOProfile prof = make_ko_profile(model, 0.5);
        double vlo = phi(prof, 1e3), vhi = phi(prof, 1e-3);
        for (double v : log_spaced(vlo, vhi, 30)) {
            double u = psi(prof, v);
            CHECK(phi(prof, u) == doctest::Approx(v).epsilon(1e-8));
        }
    }
}

TEST_CASE("phi and psi are strictly decreasing") {
    KOProfile prof = make_ko_profile(NonlinearityModel::power_log(3.0, -1.0), 0.5);
    double prev_phi = -1.0, prev_psi = -1.0;
    for (double u : log_spaced(1e-2, 1e2, 40)) {
        double v = phi(prof, u);
        if (prev_phi >= 0.0) CHECK(v < prev_phi);
        prev_phi = v;
    }
    for (double v : log_spaced(phi(prof, 1e2), phi(prof, 1e-2), 40)) {
        double u = psi(prof, v);
        if (prev_psi >= 0.0) CHECK(u < prev_psi);
        prev_psi = u;
    }
}

TEST_CASE("phi has the same order as sqrt(u/f(u))") {
    KOProfile prof = make_ko_profile(NonlinearityModel::power_log(3.0, 1.0), 0.5);
    double lo = 1e300, hi = 0.0;
    for (double u : log_spaced(1e-2, 1e4, 60)) {
        double ratio = phi(prof, u) * std::sqrt(eval_f(prof.model, u) / u);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1e3 * lo);  // two-sided with constants depending on (m, M)
}

TEST_CASE("psi outside the representable range reports its bracket") {
    KOProfile prof = make_ko_profile(NonlinearityModel::power(3.0), 0.5);
    CHECK_THROWS_AS(psi(prof, 1e300), OutOfRangeError);
    CHECK_THROWS_AS(psi(prof, 1e-300), OutOfRangeError);
}

TEST_CASE("L1 condition across the power threshold p = 1 + 2s") {
    double s = 0.5;
    auto verdict = [&](double p) {
        return check_L1(make_ko_profile(NonlinearityModel::power(p), s)).verdict;
    };
    CHECK(verdict(2.5) == Verdict::Converges);
    CHECK(verdict(1.8) == Verdict::Diverges);
    CHECK(verdict(2.0) == Verdict::Borderline);
}

TEST_CASE("L1 condition at the critical power with log weights") {
    double s = 0.5;
    auto verdict = [&](double alpha) {
        return check_L1(make_ko_profile(
                            NonlinearityModel::power_log(1.0 + 2.0 * s, alpha), s))
            .verdict;
    };
    CHECK(verdict(1.5) == Verdict::Converges);
    CHECK(verdict(0.5) == Verdict::Diverges);
}

TEST_CASE("growth condition across the power threshold p = 1 + 2s/(1-s)") {
    double s = 0.5;
    auto verdict = [&](double p) {
        return check_E(make_ko_profile(NonlinearityModel::power(p), s)).verdict;
    };
    CHECK(verdict(2.5) == Verdict::Converges);
    CHECK(verdict(3.5) == Verdict::Diverges);
    CHECK(verdict(3.0) == Verdict::Borderline);
}

TEST_CASE("growth condition at the upper critical power with log weights") {
    double s = 0.5;
    double p = (1.0 + s) / (1.0 - s);
    auto verdict = [&](double beta) {
        return check_E(make_ko_profile(NonlinearityModel::power_log(p, -beta), s))
            .verdict;
    };
    CHECK(verdict(2.0) == Verdict::Converges);
    CHECK(verdict(0.5) == Verdict::Diverges);
}

TEST_CASE("U-integrability mirrors the L1 verdict") {
    for (double s : {0.25, 0.5, 0.75}) {
        for (double p : {1.5, 2.0, 2.5, 3.5, 5.0}) {
            KOProfile prof = make_ko_profile(NonlinearityModel::power(p), s);
            CHECK(check_U_integrability(prof).verdict == check_L1(prof).verdict);
        }
    }
    KOProfile plog = make_ko_profile(NonlinearityModel::power_log(2.0, 1.5), 0.5);
    CHECK(check_U_integrability(plog).verdict == check_L1(plog).verdict);
}

TEST_CASE("ratio bounds are equalities for the cubic") {
    KOProfile prof = make_ko_profile(NonlinearityModel::power(3.0), 0.5);
    // t f/F = 4, v|psi'|/psi = 1, v^2 f(psi)/(2 psi) = 2, all exactly
    CHECK(prof.envelope.m == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(prof.envelope.M == doctest::Approx(2.0).epsilon(1e-12));
    auto grid = log_spaced(1e-2, 1e2, 33);
    RatioBoundsReport rep = verify_ratio_bounds(prof, grid);
    CHECK(std::abs(rep.ftech_margin) <= 1e-9);
    CHECK(std::abs(rep.psitech_margin) <= 1e-7);
    CHECK(rep.mono_psi_margin >= -1e-7);
    CHECK(std::abs(rep.curvature_margin) <= 1e-7);
}

TEST_CASE("ratio bounds hold with positive margin for a log-weighted model") {
    KOProfile prof = make_ko_profile(NonlinearityModel::power_log(3.0, 1.0), 0.5);
    auto grid = log_spaced(1e-2, 1e2, 64);
    RatioBoundsReport rep = verify_ratio_bounds(prof, grid);
    CHECK(rep.ftech_margin > 0.0);
    CHECK(rep.psitech_margin > 0.0);
    CHECK(rep.mono_psi_margin > 0.0);
    CHECK(rep.curvature_margin > 0.0);
}

TEST_CASE("power regime classification") {
    CHECK(classify_power_regime(2.5, 0.5) == Regime::LargeSolution);
    CHECK(classify_power_regime(1.2, 0.5) == Regime::L1Escape);
    CHECK(classify_power_regime(0.7, 0.25) == Regime::UniformBlowup);
    CHECK(classify_power_regime(0.7, 0.9) == Regime::UniformBlowup);
    CHECK(classify_power_regime(1.8, 0.5) == Regime::Unclassified);
    CHECK(classify_power_regime(3.0, 0.5) == Regime::Nonexistence);
    CHECK(classify_power_regime(3.5, 0.5) == Regime::Nonexistence);
    CHECK(classify_power_regime(1.0, 0.5) == Regime::UniformBlowup);
}

TEST_CASE("classifier is consistent with the integral checks") {
    for (double s : {0.25, 0.5, 0.75}) {
        for (double p = 0.5; p <= 6.0 + 1e-12; p += 0.25) {
            Regime regime = classify_power_regime(p, s);
            KOProfile prof = make_ko_profile(NonlinearityModel::power(
                                                 std::max(p, 1.01) == p ? p : p),
                                             s);
            if (p <= 1.0) continue;  // envelope hypothesis fails there
            Verdict l1 = check_L1(prof).verdict;
            Verdict e = check_E(prof).verdict;
            if (regime == Regime::LargeSolution) {
                CHECK(l1 == Verdict::Converges);
                CHECK(e == Verdict::Converges);
            }
            if (regime == Regime::Nonexistence)
                CHECK(e != Verdict::Converges);
        }
    }
}
