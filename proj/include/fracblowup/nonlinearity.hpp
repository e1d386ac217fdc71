#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fracblowup {

enum class Family { Power, PowerLog, Tabulated };

/// The nonlinear term f: t^p, t^p ln^alpha(1+t), or a sampled table with
/// monotone log-log interpolation. `scale` multiplies f (and F) and leaves
/// every ratio-type hypothesis untouched.
struct NonlinearityModel {
    Family family = Family::Power;
    double p = 2.0;
    double alpha = 0.0;
    double scale = 1.0;
    bool f_prime_available = true;

    std::vector<double> table_t;  // strictly increasing, > 0
    std::vector<double> table_f;  // strictly increasing, > 0
    std::vector<double> table_d;  // interpolant slopes in log-log

    static NonlinearityModel power(double p, double scale = 1.0);
    static NonlinearityModel power_log(double p, double alpha, double scale = 1.0);
    static NonlinearityModel tabulated(std::vector<double> t, std::vector<double> f);
    static NonlinearityModel tabulated_from_csv(const std::string& path);

    std::string describe() const;
};

double eval_f(const NonlinearityModel& model, double t);
double eval_f_prime(const NonlinearityModel& model, double t);
/// Antiderivative of f vanishing at 0. Closed form for pure powers,
/// singularity-absorbing quadrature otherwise.
double eval_F(const NonlinearityModel& model, double t, double rel_tol = 1e-11);

/// Two-sided envelope of t f'(t)/f(t) - 1 on a log grid.
struct GrowthEnvelope {
    double m = 0.0;
    double M = 0.0;
    double sample_min = 0.0;  // t range actually used
    double sample_max = 0.0;
    int n_samples = 0;
    double argmin_t = 0.0;  // where the ratio is extremal
    double argmax_t = 0.0;
    std::string grid_description;
};

GrowthEnvelope estimate_growth_envelope(
    const NonlinearityModel& model,
    std::pair<double, double> t_range = {1e-6, 1e6}, int n_samples = 2048);

/// Pointwise check of c^{1+m} f(t) <= f(ct) <= c^{1+M} f(t) on a grid.
struct ScalingReport {
    double c = 1.0;
    double max_rel_violation = 0.0;
    double worst_t = 0.0;
    int n_checked = 0;
};
ScalingReport check_monotone_scaling(const NonlinearityModel& model,
                                     const GrowthEnvelope& envelope, double c,
                                     std::span<const double> t_grid);

/// Witnesses (a,b) with f(t) <= a + b t on the sampled range, when the tail
/// behavior does not rule a global bound out. range_limited marks witnesses
/// valid only on the sampled range.
struct LinearBound {
    double a = 0.0;
    double b = 0.0;
    bool range_limited = false;
};
std::optional<LinearBound> check_linear_bound(
    const NonlinearityModel& model, std::pair<double, double> t_range = {1e-3, 1e6});

}  // namespace fracblowup
