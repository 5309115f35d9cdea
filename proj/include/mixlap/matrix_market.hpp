#pragma once

#include <iosfwd>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace mixlap {

/// Coordinate real symmetric format, lower triangle stored, 1-based indices,
/// values at 17 significant digits.
void write_matrix_market_sym(std::ostream& os, const Eigen::SparseMatrix<double>& A);
void write_matrix_market_sym(std::ostream& os, const Eigen::MatrixXd& A);

/// Reads a symmetric coordinate file back into a dense matrix.
Eigen::MatrixXd read_matrix_market_sym(std::istream& is);

}  // namespace mixlap
