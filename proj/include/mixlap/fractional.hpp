#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "mixlap/grid.hpp"

namespace mixlap {

/// Normalization and order of (-Delta)^s. c_ns follows the convention
/// 4^s Gamma(n/2+s) / (pi^{n/2} |Gamma(-s)|). The operator exists for every
/// s in (0,1); n > 2s is enforced where the critical exponent is consumed.
struct FractionalParams {
    int n = 1;
    double s = 0.25;
    double c_ns = 0.0;

    FractionalParams(int n_, double s_);
};

/// 1D quadrature table for the symmetric-difference form
///   (-Delta)^s u(x) = -(c/2) \int_R [u(x+z)+u(x-z)-2u(x)] |z|^{-1-2s} dz.
/// The integral over [0, Mh] is evaluated in closed form against the
/// piecewise-linear interpolant; gamma[m] is the resulting coefficient of
/// the symmetric difference u(x+mh)+u(x-mh)-2u(x). The slope-jump term on
/// the singular cell [0,h] diverges for s >= 1/2 and is replaced there by
/// the even-quadratic model (z/h)^2 * (second difference).
struct KernelTable1D {
    double h = 0.0, s = 0.0;
    int M = 0;                   // pieces cover [0, Mh]
    std::vector<double> gamma;   // gamma[m], m = 1..M (index 0 unused)
    double tail = 0.0;           // \int_{|z| > Mh} |z|^{-1-2s} dz = (Mh)^{-2s}/s
};

KernelTable1D build_kernel_table_1d(double h, double s, int M);

/// 2D table: near region |z|_inf <= (near_cells+1/2)h handled by the
/// Hessian-trace model with weight K_near = \int_N z1^2 |z|^{-2-2s} dz;
/// mid cells by cell-integrated kernel weights w(|kx|,|ky|); far field by
/// the exact complement integral of the covered rectangle.
struct KernelTable2D {
    double h = 0.0, s = 0.0;
    int near_cells = 2;
    int Mx = 0, My = 0;
    double K_near = 0.0;
    Eigen::MatrixXd w;           // (Mx+1) x (My+1), zero inside the near region
    double tail = 0.0;
};

KernelTable2D build_kernel_table_2d(double h, double s, int Mx, int My,
                                    int near_cells = 2);

enum class Exec { Serial, Parallel };

/// Dense matrix of (-Delta)^s on interior nodes against exterior-zero data.
/// Exactly symmetrized; off-diagonals <= 0; row sums strictly positive.
Eigen::MatrixXd assemble_fractional(const Grid& grid, const FractionalParams& params,
                                    Exec exec = Exec::Parallel);

/// Mixed-operator application at one interior node with explicit off-grid
/// values (the barrier path: values need not vanish outside the domain).
/// `reach`: w(y) == 0 whenever |y - x|_2 >= reach for every interior x.
class ExplicitValueOperator {
public:
    ExplicitValueOperator(GridPtr grid, FractionalParams params, double reach);

    /// (-Delta_h)w + (-Delta)^s_h w + lambda*w at interior node i.
    double apply(const std::function<double(Point)>& w, int i, double lambda) const;
    /// Local 3/5-point part alone (explicit values at the stencil points).
    double apply_local(const std::function<double(Point)>& w, int i) const;
    double apply_fractional(const std::function<double(Point)>& w, int i) const;

private:
    GridPtr grid_;
    FractionalParams params_;
    KernelTable1D t1_;
    KernelTable2D t2_;
};

}  // namespace mixlap
