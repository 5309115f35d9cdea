#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mixlap/norms.hpp"
#include "mixlap/operators.hpp"
#include "mixlap/report.hpp"

namespace mixlap {

/// Log-log slope of the discrete modulus of continuity over dyadic scales.
struct HolderFit {
    double alpha_hat = 0.0;
    double fit_quality = 0.0;  // RMS residual of the log-log fit
    std::vector<double> r;
    std::vector<double> omega;
};

/// derivative_order 0: modulus of u itself; 1: of the centered first
/// difference. Scales r = h * 2^j over axis-aligned node pairs.
HolderFit holder_fit(const GridFunction& u, int derivative_order);

struct RefinementLevel {
    double h = 0.0;
    int n_interior = 0;
    GridFunction u, f;
    std::map<std::string, double> metrics;
    int flagged_nodes = 0;
};

struct RefinementStudy {
    Domain domain = Domain::interval(0.0, 1.0);
    double s = 0.0;
    double lambda = 0.0;
    std::vector<double> h_list;
    std::vector<RefinementLevel> levels;
};

/// Solve (L_h + lambda) u = f on each level and record discrete norms
/// (p in p_list) plus Hölder fits.
RefinementStudy run_refinement_study(const Domain& domain, double s,
                                     const std::function<double(Point)>& f,
                                     double lambda,
                                     const std::vector<double>& h_list,
                                     const std::vector<double>& p_list);

/// Theorem-1.4 signature: ratio ||u||_{W^{2,p}} / (||u||_p + ||f||_p)
/// bounded (max/min < 10) across refinements.
AuditReport stability_audit(const RefinementStudy& study, double p);

/// Fitted tau(eps) curve for ||(-Delta)^s u||_p <= eps ||u||_{W^{2,p}} + tau ||u||_p
/// over random smooth boundary-vanishing trials.
AuditReport interpolation_audit(const OperatorAssembly& op, double p,
                                const std::vector<double>& eps_list, int trials,
                                std::uint64_t seed);

/// Random smooth grid function vanishing at the boundary (sine series on
/// interval/rectangle, bump-times-polynomial on the ball).
GridFunction random_smooth_trial(const GridPtr& grid, std::uint64_t seed);

}  // namespace mixlap
