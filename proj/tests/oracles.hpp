#pragma once

// Test-side oracles, independent of the library's assembly path: adaptive
// quadrature of the PV symmetric-difference integral with analytic tails.

#include <functional>
#include <vector>

namespace oracle {

struct Options1D {
    double support_lo = 0.0;   // u == 0 outside [support_lo, support_hi]
    double support_hi = 1.0;
    std::vector<double> kink_radii;  // |x - kink| values to split the quadrature at
    double slope_jump = 0.0;         // u'(x+) - u'(x-) at the evaluation point
    double model_h = 0.0;  // > 0: quadratic second-difference model on [0, model_h]
                           // (the s >= 1/2 finite-part convention, shared with the
                           // scheme on that single cell)
    double tol = 1e-12;
};

/// (-Delta)^s u(x) for a closed-form u on R (1D).
double fractional_1d(const std::function<double(double)>& u, double x, double s,
                     const Options1D& opt);

struct Options2D {
    double support_radius = 1.0;  // u == 0 outside this ball around the origin
    int theta_points = 128;
    double tol = 1e-10;
};

/// (-Delta)^s u(x) for a smooth closed-form u on R^2 (polar quadrature).
double fractional_2d(const std::function<double(double, double)>& u, double x0,
                     double x1, double s, const Options2D& opt);

/// Discrete Gagliardo seminorm squared by brute-force double summation over
/// interior node pairs plus the analytic exterior term (1D interval only).
double gagliardo_double_sum_interval(const std::vector<double>& x,
                                     const std::vector<double>& u, double h,
                                     double a, double b, double s);

/// ulp distance between two doubles (for the schedule-exactness criterion).
long long ulp_distance(double a, double b);

}  // namespace oracle
