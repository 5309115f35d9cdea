#include "mixlap/reference.hpp"

#include "mixlap/operators.hpp"

namespace mixlap::reference {

Eigen::MatrixXd assemble_fractional(const Grid& grid, const FractionalParams& params) {
    return mixlap::assemble_fractional(grid, params, Exec::Serial);
}

Eigen::VectorXd matvec(const Eigen::MatrixXd& A, const Eigen::VectorXd& x) {
    Eigen::VectorXd y(A.rows());
    for (Eigen::Index i = 0; i < A.rows(); ++i) y[i] = detail::row_dot(A, i, x);
    return y;
}

double chunked_sum(const Eigen::VectorXd& v) {
    constexpr Eigen::Index chunk = 4096;
    double total = 0.0;
    for (Eigen::Index lo = 0; lo < v.size(); lo += chunk) {
        const Eigen::Index hi = std::min(v.size(), lo + chunk);
        double acc = 0.0;
        for (Eigen::Index i = lo; i < hi; ++i) acc += v[i];
        total += acc;
    }
    return total;
}

}  // namespace mixlap::reference
