#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mixlap/report.hpp"
#include "mixlap/solver.hpp"

namespace mixlap {

/// Pointwise nonlinearity g(x,t) with its claimed (H1) growth envelope
/// |g(x,t)| <= c (1 + |t|^{q-1}). The claim is audited, never assumed.
struct Nonlinearity {
    std::string name;
    std::function<double(Point, double)> g;
    double growth_c = 1.0;
    double growth_q = 2.0;
    /// True when g does not depend on t (the linear-data case).
    bool t_independent = false;
};

/// Catalog: zero | const(value) | linear(a + b*t) | sin(amp) |
/// cubic(amp) | logistic(rate, cap). Unknown names raise ConfigError.
Nonlinearity make_nonlinearity(const nlohmann::json& spec);

AuditReport check_growth(const Nonlinearity& nl, const Grid& grid,
                         const std::vector<double>& t_samples);

struct SemilinearTrace {
    double lambda = 0.0, tol = 0.0;
    bool converged = false;
    std::vector<double> step_inf;
    std::vector<double> residual_inf;
    std::vector<GridFunction> iterates;
};

/// lambda-shifted Picard: u_{k+1} solves (L_h + lambda) u = g(.,u_k) + lambda u_k,
/// u_0 = 0. Stops when the step test and a recomputed nodal residual
/// (< 9.5 tol) both hold.
std::pair<GridFunction, SemilinearTrace> solve_semilinear(
    const OperatorAssembly& op, const Nonlinearity& nl, double lambda, double tol,
    int max_iter, bool keep_iterates = false);

/// max_i |(A_loc + A_frac) u - g(x_i, u_i)| — the nodal weak-form defect.
double weak_residual(const OperatorAssembly& op, const GridFunction& u,
                     const Nonlinearity& nl);

}  // namespace mixlap
