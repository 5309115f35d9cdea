#pragma once

#include <Eigen/Core>

#include "mixlap/fractional.hpp"
#include "mixlap/grid.hpp"

namespace mixlap::reference {

/// Serial reference kernels. Kept deliberately plain; the OpenMP paths in
/// the library must reproduce these bitwise (same per-row arithmetic).

Eigen::MatrixXd assemble_fractional(const Grid& grid, const FractionalParams& params);

/// Naive dense matvec, row by row.
Eigen::VectorXd matvec(const Eigen::MatrixXd& A, const Eigen::VectorXd& x);

/// Plain left-to-right accumulation in chunks of 4096, matching par::sum.
double chunked_sum(const Eigen::VectorXd& v);

}  // namespace mixlap::reference
