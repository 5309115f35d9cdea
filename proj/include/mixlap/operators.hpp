#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "mixlap/fractional.hpp"
#include "mixlap/grid.hpp"

namespace mixlap {

namespace detail {
/// Scalar left-to-right row product. Shared by the parallel kernels and the
/// serial reference so the two are bitwise comparable.
inline double row_dot(const Eigen::MatrixXd& A, Eigen::Index i,
                      const Eigen::VectorXd& x) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j) acc += A(i, j) * x[j];
    return acc;
}
}  // namespace detail

/// 3-point (1D) / 5-point (2D) stencil scaled by 1/h^2. Neighbors outside
/// the interior are dropped: the Dirichlet condition by exclusion.
Eigen::SparseMatrix<double> assemble_laplacian(const Grid& grid);

/// Discrete -Delta (sparse), (-Delta)^s (dense) on the same grid.
struct OperatorAssembly {
    GridPtr grid;
    FractionalParams params;
    Eigen::SparseMatrix<double> A_loc;
    Eigen::MatrixXd A_frac;

    int size() const { return static_cast<int>(A_frac.rows()); }
};

OperatorAssembly assemble(GridPtr grid, const FractionalParams& params,
                          Exec exec = Exec::Parallel);

/// (A_loc + A_frac + lambda I) u
GridFunction apply_mixed(const OperatorAssembly& op, const GridFunction& u,
                         double lambda);

/// h^n * v^T (A_loc + A_frac) u — the discrete weak-form left side.
double bilinear_form(const OperatorAssembly& op, const GridFunction& u,
                     const GridFunction& v);

/// (2/c_ns) * h^n * u^T A_frac u, the discrete Gagliardo seminorm squared.
double gagliardo_seminorm_sq(const OperatorAssembly& op, const GridFunction& u);

/// Structure probes used by the audits (exact, no tolerances).
struct MatrixStructure {
    double max_asymmetry = 0.0;     // ||A - A^T||_max over the combined operator
    double max_offdiag = 0.0;       // most positive off-diagonal entry
    double min_diag = 0.0;
    double min_dominance = 0.0;     // min_i (a_ii - sum_j |a_ij|), lambda = 0
};

MatrixStructure structure_report(const OperatorAssembly& op);

void check_same_grid(const GridFunction& u, const OperatorAssembly& op);

}  // namespace mixlap
