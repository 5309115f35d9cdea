#pragma once

#include "mixlap/operators.hpp"
#include "mixlap/report.hpp"
#include "mixlap/solver.hpp"

namespace mixlap {

/// Explicit barrier w(x) = 1 - e^{beta(|x-x0|^2 - R^2)} on B_R(x0), 0 outside.
/// `scale` normalizes the measured supersolution minimum to 1.
struct Barrier {
    Point x0{0.0, 0.0};
    double R = 1.0;
    double beta = 1.0;
    double scale = 1.0;
    int n = 1;
    GridPtr grid;

    double value(const Point& p) const;
    double scaled_value(const Point& p) const { return scale * value(p); }
    /// -Delta w = e^{beta(r^2-R^2)} (2 n beta + 4 beta^2 r^2), r <= R.
    double neg_laplacian_closed_form(const Point& p) const;
    /// max_r e^{beta(r^2-R^2)} (12 b^2 r + 8 b^3 r^3): radial third-derivative bound.
    double third_derivative_bound() const;
    double fourth_derivative_bound() const;
};

/// Deterministic annulus rule: x0 on the first axis through the domain
/// center at offset 1.25 diam, R grown from (4/3) sup|x-x0| until the
/// strict inclusion closure(Omega) in B_{3R/4} \ B_{R/4} verifies.
std::pair<Point, double> choose_annulus(const Domain& domain);

struct SupersolutionResult {
    Barrier barrier;        // chosen beta, normalizing scale
    double alpha0 = 0.0;    // raw min of L_h w at the chosen beta
    double min_scaled = 0.0;
    double eps_h = 0.0;
    AuditReport report;
};

/// Sweeps beta (doubling; also probes {1/16..1/2}) and returns the barrier
/// normalized so min L_h(scale w) = 1. The nonlocal sum uses w's explicit
/// values on B_R \ Omega (this path bypasses the exterior-zero convention).
SupersolutionResult verify_supersolution(const GridPtr& grid,
                                         const FractionalParams& params, Point x0,
                                         double R, double beta_max = 65536.0);

/// Lemma 4.10 transform v = (1/lambda)(1 - e^{-lambda w}):
/// checks (L_h + lambda) v >= 1 - eps_h nodally plus pointwise concavity
/// on kernel-coupled pairs.
AuditReport concave_transform_check(const Barrier& barrier,
                                    const OperatorAssembly& op, double lambda);

/// Lemma 4.8: solves (L_h + lambda) w = 1 and (L_h + lambda) u = h_rhs,
/// asserts 0 <= w < 1/lambda nodally and |u| <= ||h||_inf w by monotonicity.
AuditReport comparison_bound(const OperatorAssembly& op, double lambda,
                             const GridFunction& h_rhs);

}  // namespace mixlap
