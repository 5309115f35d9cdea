#pragma once

#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/SparseCholesky>

#include "mixlap/operators.hpp"

namespace mixlap {

/// Record of a T_lambda fixed-point run. Ratios start at step 2; the trace
/// logs the stopping norm (inf) together with L^p and W^{2,p} surrogates.
struct ContractionTrace {
    double lambda = 0.0;
    double tol = 0.0;
    double p = 2.0;
    bool converged = false;
    std::vector<double> ratios;
    std::vector<double> step_inf, step_lp, step_w2p;
    std::vector<GridFunction> iterates;  // populated when keep_iterates
};

/// Cached dense Cholesky of (A_loc + A_frac + lambda I) with iterative
/// refinement; residual contract ||Au - f||_inf <= 1e-10 ||f||_inf.
class DirectSolver {
public:
    DirectSolver(const OperatorAssembly& op, double lambda);
    GridFunction solve(const GridFunction& f) const;
    double lambda() const { return lambda_; }

private:
    const OperatorAssembly* op_;
    double lambda_;
    Eigen::MatrixXd M_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
};

GridFunction solve_direct(const OperatorAssembly& op, double lambda,
                          const GridFunction& f);

/// Picard iterates of T_lambda: (A_loc + lambda I) w_{k+1} = f - A_frac w_k,
/// started from w_0 = 0. The inner solve reuses one sparse factorization.
std::pair<GridFunction, ContractionTrace> contraction_solve(
    const OperatorAssembly& op, double lambda, const GridFunction& f, double tol,
    int max_iter, bool keep_iterates = false);

/// Smallest tested lambda whose measured ratios stay below 1 over 20
/// iterations (bisection after doubling); the empirical lambda_1.
double estimate_lambda_threshold(const OperatorAssembly& op,
                                 const GridFunction& probe_f);

}  // namespace mixlap
