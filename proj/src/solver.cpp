#include "mixlap/solver.hpp"

#include <cmath>

#include "mixlap/errors.hpp"
#include "mixlap/norms.hpp"
#include "mixlap/parallel.hpp"

namespace mixlap {

DirectSolver::DirectSolver(const OperatorAssembly& op, double lambda)
    : op_(&op), lambda_(lambda) {
    if (!(lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
    const int N = op.size();
    M_ = Eigen::MatrixXd(op.A_loc) + op.A_frac;
    M_.diagonal().array() += lambda;
    llt_.compute(M_);
    if (llt_.info() != Eigen::Success)
        throw SingularSystem("Cholesky failed on an M-matrix (assembly fault)");
    (void)N;
}

GridFunction DirectSolver::solve(const GridFunction& f) const {
    check_same_grid(f, *op_);
    const double fscale = linf_norm(f);
    Eigen::VectorXd u = llt_.solve(f.values);
    // one round of iterative refinement keeps the residual contract honest
    for (int it = 0; it < 3; ++it) {
        const Eigen::VectorXd r = f.values - M_ * u;
        if (r.cwiseAbs().maxCoeff() <= 1e-10 * std::max(fscale, 1e-300)) break;
        u += llt_.solve(r);
    }
    const double res = (f.values - M_ * u).cwiseAbs().maxCoeff();
    if (res > 1e-10 * std::max(fscale, 1e-300))
        throw SingularSystem("direct solve residual bound not met");
    return GridFunction(f.grid, std::move(u));
}

GridFunction solve_direct(const OperatorAssembly& op, double lambda,
                          const GridFunction& f) {
    return DirectSolver(op, lambda).solve(f);
}

namespace {

Eigen::VectorXd frac_matvec(const OperatorAssembly& op, const Eigen::VectorXd& x) {
    Eigen::VectorXd y(x.size());
    par::for_range(x.size(), [&](std::int64_t i) {
        y[i] = detail::row_dot(op.A_frac, i, x);
    });
    return y;
}

}  // namespace

std::pair<GridFunction, ContractionTrace> contraction_solve(
    const OperatorAssembly& op, double lambda, const GridFunction& f, double tol,
    int max_iter, bool keep_iterates) {
    if (!(lambda > 0.0)) throw ConfigError("contraction requires lambda > 0");
    if (!(tol > 0.0)) throw ConfigError("tol must be positive");
    check_same_grid(f, op);

    Eigen::SparseMatrix<double> L = op.A_loc;
    for (int i = 0; i < L.rows(); ++i) L.coeffRef(i, i) += lambda;
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(L);
    if (llt.info() != Eigen::Success)
        throw SingularSystem("sparse Cholesky failed on A_loc + lambda I");

    ContractionTrace trace;
    trace.lambda = lambda;
    trace.tol = tol;

    GridFunction w(f.grid);  // w_0 = 0
    if (keep_iterates) trace.iterates.push_back(w);
    int consecutive_expanding = 0;
    double prev_step = -1.0;

    for (int k = 1; k <= max_iter; ++k) {
        Eigen::VectorXd rhs = f.values - frac_matvec(op, w.values);
        Eigen::VectorXd next = llt.solve(rhs);
        Eigen::VectorXd delta = next - w.values;
        const double step = delta.cwiseAbs().maxCoeff();

        GridFunction dgf(f.grid, delta);
        trace.step_inf.push_back(step);
        trace.step_lp.push_back(lp_norm(dgf, trace.p));
        trace.step_w2p.push_back(discrete_wkp_norm(dgf, 2, trace.p).value);
        if (prev_step >= 0.0) {
            const double ratio = prev_step > 0.0
                                     ? step / prev_step
                                     : 0.0;
            trace.ratios.push_back(ratio);
            if (!(ratio < 1.0)) {
                if (++consecutive_expanding >= 5)
                    throw NotContracting(
                        "step ratios >= 1 for 5 consecutive iterations (lambda below "
                        "the discrete threshold)");
            } else {
                consecutive_expanding = 0;
            }
        }
        prev_step = step;
        w.values = std::move(next);
        if (keep_iterates) trace.iterates.push_back(w);

        if (step < tol) {
            // full-equation residual: (A+lambda)w - f = A_frac * delta
            const double res = frac_matvec(op, delta).cwiseAbs().maxCoeff();
            if (res <= 0.95 * tol * (1.0 + lambda)) {
                trace.converged = true;
                return {std::move(w), std::move(trace)};
            }
        }
        if (!std::isfinite(step))
            throw NotContracting("iteration diverged to non-finite values");
    }
    throw MaxIterExceeded("contraction_solve did not converge");
}

namespace {

/// 20 fixed iterations; contracting iff every recorded ratio stays < 1.
/// Steps that reach the roundoff floor count as converged (their ratios are
/// noise, not growth).
bool contracts(const OperatorAssembly& op, double lambda, const GridFunction& f) {
    Eigen::SparseMatrix<double> L = op.A_loc;
    for (int i = 0; i < L.rows(); ++i) L.coeffRef(i, i) += lambda;
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(L);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(op.size());
    double prev_step = -1.0;
    double scale = 0.0;
    for (int k = 1; k <= 20; ++k) {
        Eigen::VectorXd rhs = f.values - frac_matvec(op, w);
        Eigen::VectorXd next = llt.solve(rhs);
        const double step = (next - w).cwiseAbs().maxCoeff();
        if (!std::isfinite(step)) return false;
        scale = std::max(scale, next.cwiseAbs().maxCoeff());
        if (step <= 1e-13 * std::max(scale, 1e-300)) return true;
        if (prev_step > 0.0 && !(step / prev_step < 1.0)) return false;
        if (prev_step == 0.0 && step > 0.0) return false;
        prev_step = step;
        w = std::move(next);
    }
    return true;
}

}  // namespace

double estimate_lambda_threshold(const OperatorAssembly& op,
                                 const GridFunction& probe_f) {
    check_same_grid(probe_f, op);
    if (linf_norm(probe_f) == 0.0) throw ConfigError("probe_f must be nonzero");

    // At desk scales the local part can dominate and T_lambda contracts for
    // every lambda >= 0; the probe is floored at 2^-20 in that case.
    constexpr double kFloor = 1.0 / (1 << 20);

    double hi = 1.0;
    while (!contracts(op, hi, probe_f)) {
        hi *= 2.0;
        if (hi > 1e6)
            throw NoContractionFound("no contraction up to lambda = 1e6");
    }
    double lo = 0.0;
    if (hi > 1.0) {
        lo = hi / 2.0;
    } else {
        while (hi > kFloor && contracts(op, 0.5 * hi, probe_f)) hi *= 0.5;
        if (hi <= kFloor) return hi;
        lo = 0.5 * hi;
    }
    // bisect to ~1% relative width; return the smallest *tested* contracting lambda
    while (hi - lo > 0.01 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (contracts(op, mid, probe_f))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace mixlap
