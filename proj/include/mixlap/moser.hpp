#pragma once

#include <vector>

#include "mixlap/operators.hpp"
#include "mixlap/report.hpp"

namespace mixlap {

/// 2n/(n-2s); SubcriticalDimension when n <= 2s.
double critical_exponent(int n, double s);

/// Exponent schedule: beta_1 = (2*_s+1)/2 and
/// 2 beta_{m+1} + 2*_s - 2 = 2*_s beta_m, i.e.
/// beta_{m+1} - 1 = (2*_s/2)^m (beta_1 - 1).
struct MoserSchedule {
    int n = 0;
    double s = 0.0;
    double two_star = 0.0;
    double qbar = 0.0;               // 2 / 2*_s < 1
    std::vector<double> beta;        // beta[0] = beta_1, ..., beta[M-1]
};

MoserSchedule beta_sequence(int n, double s, int M);

/// m-independent product bound C0(fitted_C) from the geometric series of
/// Step 3: prod C_k^{1/(2(beta_k-1))} <= C0, base clamped to >= 1.
double moser_product_bound(const MoserSchedule& sched, double fitted_C);

/// Convex Lipschitz truncation of |t|^beta at level T (Step 1).
struct TruncationPhi {
    double beta = 2.0;  // > 1
    double T = 1.0;     // > 0
};

struct PhiEval {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;  // reported 0 outside (-T,T)\{0}
};

PhiEval truncation_phi(double t, const TruncationPhi& phi);

/// Growth envelope recorded with main-estimate audits.
struct GrowthEnvelope {
    double c = 1.0;
    double q = 2.0;
};

/// Main estimate (3.7): LHS = (h^n sum phi(u)^{2*_s})^{2/2*_s},
/// RHS = beta (h^n sum |u|^{2beta-1} + h^n sum phi(u)^2 |u|^{2*_s-2});
/// reports the smallest C with LHS <= C RHS.
AuditReport audit_main_estimate(const GridFunction& u, const MoserSchedule& sched,
                                double beta, double T, const GrowthEnvelope& env);

struct MoserCertificate {
    std::vector<double> A;           // A_m, m = 1..M
    double fitted_C = 0.0;
    double C0 = 0.0;
    double bound_value = 0.0;        // C0 * A_1
    double u_max = 0.0;
    bool pass = false;
    double eps_h = 0.0;              // nodal-quadrature volume defect
    double R_selected = 0.0;         // smallest grid-realizable R of (3.8)/(3.9)
    double R_threshold = 0.0;        // 1/(2 fitted_C beta_1)
    std::vector<double> beta_sweep_C;
    nlohmann::json to_json() const;
};

/// Theorem 1.1 certificate: ||u||_inf <= C0 (1 + int |u|^{2*_s beta_1})^{1/(2*_s(beta_1-1))}.
MoserCertificate compute_certificate(const GridFunction& u, int n, double s, int M);

/// Discrete (4.2): (A_frac phi(u))_i <= phi'(u_i) (A_frac u)_i nodally,
/// plus the row-wise kernel-weight form.
AuditReport convexity_inequality_audit(const OperatorAssembly& op,
                                       const GridFunction& u,
                                       const TruncationPhi& phi);

/// Fitted Sobolev constant: max over trials of ||u||^2_{2*_s} / [u]^2_s.
double embedding_constant_audit(const OperatorAssembly& op, int trials,
                                std::uint64_t seed);

}  // namespace mixlap
