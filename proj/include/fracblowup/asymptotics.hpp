#pragma once

#include "fracblowup/ko.hpp"
#include "fracblowup/mesh.hpp"

namespace fracblowup {

struct FitWindow {
    double lo = 0.0;
    double hi = 0.1;
    int skip_nearest = 3;  // nodes nearest the boundary carry the largest error
};

/// Default window [4 delta_min, 0.1] excluding the nearest nodes.
FitWindow default_fit_window(const GradedMesh& mesh);

struct BoundaryFit {
    double window_lo = 0.0, window_hi = 0.0;
    double exponent = 0.0;
    double coefficient = 0.0;
    double r_squared = 0.0;
    int node_count = 0;
};

/// Log-log regression of the total solution against delta on the window.
BoundaryFit boundary_exponent(const GridFunction& gf, FitWindow window = {});

struct TraceFit {
    double trace = 0.0;
    bool infinite_flag = false;
    double window_lo = 0.0, window_hi = 0.0;
    int node_count = 0;
    double half_window_trace = 0.0;  // stability diagnostic
};

/// Fitted boundary limit of delta^{1-s} u; flags +inf when the fit keeps
/// growing as the window shrinks.
TraceFit singular_trace(const GridFunction& gf, double s, FitWindow window = {});

struct BBehavReport {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    double fitted_limit = 0.0;
    double min_ratio_half_window = 0.0;
    bool pass = false;
    double window_lo = 0.0, window_hi = 0.0;
    int node_count = 0;
};

/// Ratio phi(u(x)) / delta(x)^s on the window; PASS when the minimum stays
/// positive under window shrinking.
BBehavReport bbehav_check(const GridFunction& gf, const KOProfile& profile,
                          FitWindow window = {});

}  // namespace fracblowup
