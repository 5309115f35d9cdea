#include "mixlap/operators.hpp"

#include <cmath>
#include <vector>

#include "mixlap/errors.hpp"
#include "mixlap/parallel.hpp"

namespace mixlap {

Eigen::SparseMatrix<double> assemble_laplacian(const Grid& grid) {
    const int N = grid.n_interior();
    const double inv_h2 = 1.0 / (grid.h() * grid.h());
    const int n = grid.dim();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(N) * (2 * n + 1));
    for (int i = 0; i < N; ++i) {
        const auto [jx, jy] = grid.lattice_coords(i);
        trip.emplace_back(i, i, 2.0 * n * inv_h2);
        const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (int d = 0; d < 2 * n; ++d) {
            const int j = grid.interior_index(jx + nb[d][0], jy + nb[d][1]);
            if (j >= 0) trip.emplace_back(i, j, -inv_h2);
        }
    }
    Eigen::SparseMatrix<double> A(N, N);
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

OperatorAssembly assemble(GridPtr grid, const FractionalParams& params, Exec exec) {
    if (grid->dim() != params.n) throw GridMismatch("grid dimension != params.n");
    OperatorAssembly op{grid, params, assemble_laplacian(*grid),
                        assemble_fractional(*grid, params, exec)};
    return op;
}

void check_same_grid(const GridFunction& u, const OperatorAssembly& op) {
    if (!u.grid || !u.grid->same_layout(*op.grid))
        throw GridMismatch("grid function does not live on the assembly grid");
}

GridFunction apply_mixed(const OperatorAssembly& op, const GridFunction& u,
                         double lambda) {
    check_same_grid(u, op);
    GridFunction out(op.grid);
    out.values = op.A_loc * u.values;
    const int N = op.size();
    // Row-parallel dense matvec; per-row arithmetic order is fixed.
    par::for_range(N, [&](std::int64_t i) {
        out.values[i] += detail::row_dot(op.A_frac, i, u.values) + lambda * u.values[i];
    });
    return out;
}

double bilinear_form(const OperatorAssembly& op, const GridFunction& u,
                     const GridFunction& v) {
    check_same_grid(u, op);
    check_same_grid(v, op);
    const GridFunction Au = apply_mixed(op, u, 0.0);
    const double hn = std::pow(op.grid->h(), op.grid->dim());
    return hn * par::sum(op.size(), [&](std::int64_t i) {
               return v.values[i] * Au.values[i];
           });
}

double gagliardo_seminorm_sq(const OperatorAssembly& op, const GridFunction& u) {
    check_same_grid(u, op);
    const double hn = std::pow(op.grid->h(), op.grid->dim());
    Eigen::VectorXd Afu(op.size());
    par::for_range(op.size(), [&](std::int64_t i) {
        Afu[i] = detail::row_dot(op.A_frac, i, u.values);
    });
    const double quad_form =
        par::sum(op.size(), [&](std::int64_t i) { return u.values[i] * Afu[i]; });
    return 2.0 / op.params.c_ns * hn * quad_form;
}

MatrixStructure structure_report(const OperatorAssembly& op) {
    const int N = op.size();
    Eigen::MatrixXd A = Eigen::MatrixXd(op.A_loc) + op.A_frac;
    MatrixStructure r;
    r.max_asymmetry = (A - A.transpose()).cwiseAbs().maxCoeff();
    r.min_diag = A.diagonal().minCoeff();
    r.max_offdiag = -std::numeric_limits<double>::infinity();
    r.min_dominance = std::numeric_limits<double>::infinity();
    for (int i = 0; i < N; ++i) {
        double off_abs = 0.0;
        for (int j = 0; j < N; ++j) {
            if (i == j) continue;
            r.max_offdiag = std::max(r.max_offdiag, A(i, j));
            off_abs += std::abs(A(i, j));
        }
        r.min_dominance = std::min(r.min_dominance, A(i, i) - off_abs);
    }
    return r;
}

}  // namespace mixlap
