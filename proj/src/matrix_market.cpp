#include "mixlap/matrix_market.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mixlap/errors.hpp"

namespace mixlap {

namespace {

const char* kHeader = "%%MatrixMarket matrix coordinate real symmetric";

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_matrix_market_sym(std::ostream& os, const Eigen::SparseMatrix<double>& A) {
    if (A.rows() != A.cols()) throw ConfigError("matrix must be square");
    std::vector<std::string> lines;
    for (int k = 0; k < A.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it) {
            if (it.row() < it.col()) continue;  // lower triangle only
            lines.push_back(std::to_string(it.row() + 1) + " " +
                            std::to_string(it.col() + 1) + " " + fmt17(it.value()));
        }
    }
    os << kHeader << "\n";
    os << A.rows() << " " << A.cols() << " " << lines.size() << "\n";
    for (const auto& l : lines) os << l << "\n";
}

void write_matrix_market_sym(std::ostream& os, const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) throw ConfigError("matrix must be square");
    const Eigen::Index n = A.rows();
    os << kHeader << "\n";
    os << n << " " << n << " " << n * (n + 1) / 2 << "\n";
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j)
            os << i + 1 << " " << j + 1 << " " << fmt17(A(i, j)) << "\n";
}

Eigen::MatrixXd read_matrix_market_sym(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("%%MatrixMarket", 0) != 0)
        throw ConfigError("not a MatrixMarket file");
    if (line.find("symmetric") == std::string::npos)
        throw ConfigError("expected symmetric storage");
    while (std::getline(is, line)) {
        if (!line.empty() && line[0] != '%') break;
    }
    std::istringstream head(line);
    Eigen::Index rows = 0, cols = 0;
    std::size_t nnz = 0;
    head >> rows >> cols >> nnz;
    if (rows != cols || rows <= 0) throw ConfigError("bad size line");
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
    for (std::size_t k = 0; k < nnz; ++k) {
        Eigen::Index i, j;
        double v;
        if (!(is >> i >> j >> v)) throw ConfigError("truncated entry list");
        A(i - 1, j - 1) = v;
        A(j - 1, i - 1) = v;
    }
    return A;
}

}  // namespace mixlap
