#include "mixlap/fractional.hpp"

#include <cmath>

#include "mixlap/errors.hpp"
#include "mixlap/parallel.hpp"
#include "mixlap/quadrature.hpp"

namespace mixlap {

FractionalParams::FractionalParams(int n_, double s_) : n(n_), s(s_) {
    if (!(s > 0.0 && s < 1.0)) throw UnsupportedOrder("s must lie in (0,1)");
    if (!(n == 1 || n == 2)) throw ConfigError("dimension must be 1 or 2");
    // |Gamma(-s)| = Gamma(1-s)/s
    c_ns = std::pow(4.0, s) * std::tgamma(0.5 * n + s) * s /
           (std::pow(M_PI, 0.5 * n) * std::tgamma(1.0 - s));
}

namespace {

// \int_a^b z^{-1-2s} dz, 0 < a < b
double int_K(double a, double b, double s) {
    return (std::pow(a, -2.0 * s) - std::pow(b, -2.0 * s)) / (2.0 * s);
}

// \int_a^b z * z^{-1-2s} dz; log branch at s = 1/2. Finite at a=0 iff s<1/2.
double int_zK(double a, double b, double s) {
    if (s == 0.5) return std::log(b / a);
    return (std::pow(b, 1.0 - 2.0 * s) - std::pow(a, 1.0 - 2.0 * s)) / (1.0 - 2.0 * s);
}

// \int_0^b z^2 * z^{-1-2s} dz (quadratic-model cell; finite for all s<1)
double int_z2K0(double b, double s) {
    return std::pow(b, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
}

}  // namespace

KernelTable1D build_kernel_table_1d(double h, double s, int M) {
    if (M < 2) throw ConfigError("kernel table needs at least 2 pieces");
    KernelTable1D t;
    t.h = h;
    t.s = s;
    t.M = M;
    t.gamma.assign(static_cast<std::size_t>(M) + 1, 0.0);

    // Piece m on [mh,(m+1)h]: delta2(z) = A_m (1-t) + A_{m+1} t, t=(z-mh)/h.
    // c_minus -> A_m, c_plus -> A_{m+1}.
    for (int m = 0; m < M; ++m) {
        const double a = m * h, b = (m + 1) * h;
        double c_plus, c_minus;
        if (m == 0) {
            c_minus = 0.0;  // A_0 == 0 identically
            c_plus = (s < 0.5) ? int_zK(0.0, h, s) / h       // PL-exact
                               : int_z2K0(h, s) / (h * h);   // quadratic model
        } else {
            const double i0 = int_K(a, b, s);
            const double i1 = int_zK(a, b, s);
            c_minus = (1.0 + m) * i0 - i1 / h;
            c_plus = i1 / h - m * i0;
        }
        if (m >= 1) t.gamma[static_cast<std::size_t>(m)] += c_minus;
        t.gamma[static_cast<std::size_t>(m) + 1] += c_plus;
    }
    t.tail = std::pow(M * h, -2.0 * s) / s;
    return t;
}

KernelTable2D build_kernel_table_2d(double h, double s, int Mx, int My,
                                    int near_cells) {
    KernelTable2D t;
    t.h = h;
    t.s = s;
    t.near_cells = near_cells;
    t.Mx = Mx;
    t.My = My;
    if (Mx <= near_cells || My <= near_cells)
        throw ConfigError("2D kernel table smaller than its near region");

    // K_near over the square [-a,a]^2: polar reduction, exact radial integral.
    {
        const double a = (near_cells + 0.5) * h;
        t.K_near = 4.0 * quad::gauss(
                             [&](double th) {
                                 const double r0 = a / std::cos(th);
                                 return std::pow(r0, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
                             },
                             0.0, 0.25 * M_PI, 64);
    }

    // Mid-field tent weights w(|kx|,|ky|) = \int_M K(z) B_k(z) dz with B_k the
    // bilinear basis at lattice offset k and M the region between the near
    // square and the far rectangle [-Ax,Ax] x [-Ay,Ay]. Exact integration of
    // the piecewise-bilinear interpolant of the symmetric difference; all
    // weights are nonnegative.
    const double Ax = Mx * h, Ay = My * h;
    t.w = Eigen::MatrixXd::Zero(Mx + 2, My + 2);
    {
        const auto& rule = quad::gauss_legendre(12);
        const int nq = 12;
        struct Cell {
            double x0, x1, y0, y1;
        };
        std::vector<Cell> cells;
        for (int mx = -Mx; mx <= Mx; ++mx) {
            for (int my = -My; my <= My; ++my) {
                if (std::max(std::abs(mx), std::abs(my)) <= near_cells) continue;
                // clip the cell at the far rectangle (both are axis-aligned)
                const double x0 = std::max(mx * h - 0.5 * h, -Ax);
                const double x1 = std::min(mx * h + 0.5 * h, Ax);
                const double y0 = std::max(my * h - 0.5 * h, -Ay);
                const double y1 = std::min(my * h + 0.5 * h, Ay);
                if (x1 <= x0 || y1 <= y0) continue;
                cells.push_back({x0, x1, y0, y1});
            }
        }
        Eigen::MatrixXd full =
            Eigen::MatrixXd::Zero(2 * (Mx + 2) + 1, 2 * (My + 2) + 1);
        const int ox = Mx + 2, oy = My + 2;  // index offsets into `full`
        for (const Cell& cell : cells) {
            const double cx = 0.5 * (cell.x0 + cell.x1), hx = 0.5 * (cell.x1 - cell.x0);
            const double cy = 0.5 * (cell.y0 + cell.y1), hy = 0.5 * (cell.y1 - cell.y0);
            for (int i = 0; i < nq; ++i) {
                const double zx = cx + hx * rule.nodes[i];
                for (int j = 0; j < nq; ++j) {
                    const double zy = cy + hy * rule.nodes[j];
                    const double k = std::pow(zx * zx + zy * zy, -1.0 - s) *
                                     rule.weights[i] * rule.weights[j] * hx * hy;
                    const double fx = std::floor(zx / h), fy = std::floor(zy / h);
                    const double bx = zx / h - fx, by = zy / h - fy;
                    const int ix = static_cast<int>(fx), iy = static_cast<int>(fy);
                    full(ox + ix, oy + iy) += k * (1.0 - bx) * (1.0 - by);
                    full(ox + ix + 1, oy + iy) += k * bx * (1.0 - by);
                    full(ox + ix, oy + iy + 1) += k * (1.0 - bx) * by;
                    full(ox + ix + 1, oy + iy + 1) += k * bx * by;
                }
            }
        }
        // fold the even symmetry k -> -k into the quadrant table
        for (int kx = 0; kx <= Mx + 1; ++kx) {
            for (int ky = 0; ky <= My + 1; ++ky) {
                double acc = 0.0;
                int copies = 0;
                for (int sx : {1, -1}) {
                    for (int sy : {1, -1}) {
                        if ((kx == 0 && sx < 0) || (ky == 0 && sy < 0)) continue;
                        acc += full(ox + sx * kx, oy + sy * ky);
                        ++copies;
                    }
                }
                // each symmetric image carries the same weight
                t.w(kx, ky) = acc / copies;
            }
        }
    }

    // Far field: complement of [-Ax,Ax] x [-Ay,Ay].
    {
        const double th_star = std::atan2(Ay, Ax);
        const double part1 = quad::gauss(
            [&](double th) { return std::pow(Ax / std::cos(th), -2.0 * s); }, 0.0,
            th_star, 64);
        const double part2 = quad::gauss(
            [&](double th) { return std::pow(Ay / std::sin(th), -2.0 * s); }, th_star,
            0.5 * M_PI, 64);
        t.tail = 4.0 * (part1 + part2) / (2.0 * s);
    }
    return t;
}

namespace {

// Row scatter shared by serial and parallel assembly paths.
void fractional_row_1d(const Grid& grid, const FractionalParams& p,
                       const KernelTable1D& t, int i, Eigen::MatrixXd& A) {
    const double c = p.c_ns;
    const int jx = grid.lattice_coords(i)[0];
    double diag = c * t.tail;
    for (int m = 1; m <= t.M; ++m) {
        const double g = t.gamma[static_cast<std::size_t>(m)];
        diag += 2.0 * c * g;
        const int ip = grid.interior_index(jx + m, 0);
        const int im = grid.interior_index(jx - m, 0);
        if (ip >= 0) A(i, ip) -= c * g;
        if (im >= 0) A(i, im) -= c * g;
    }
    A(i, i) += diag;
}

void fractional_row_2d(const Grid& grid, const FractionalParams& p,
                       const KernelTable2D& t, int i, Eigen::MatrixXd& A) {
    const double c = p.c_ns;
    const auto [jx, jy] = grid.lattice_coords(i);
    const double h2 = t.h * t.h;
    double diag = c * t.tail;

    // Near region: Hessian-trace model, a scaled 5-point stencil.
    const double nu = 0.5 * c * t.K_near / h2;
    const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& d : nb) {
        const int j = grid.interior_index(jx + d[0], jy + d[1]);
        if (j >= 0) A(i, j) -= nu;
        diag += nu;
    }

    // Mid field: loop the lexicographic half-space, scatter both offsets.
    for (int ky = 0; ky <= t.My + 1; ++ky) {
        const int kx_begin = (ky == 0) ? 1 : -(t.Mx + 1);
        for (int kx = kx_begin; kx <= t.Mx + 1; ++kx) {
            const double wk = t.w(std::abs(kx), std::abs(ky));
            if (wk == 0.0) continue;
            diag += 2.0 * c * wk;
            const int jp = grid.interior_index(jx + kx, jy + ky);
            const int jm = grid.interior_index(jx - kx, jy - ky);
            if (jp >= 0) A(i, jp) -= c * wk;
            if (jm >= 0) A(i, jm) -= c * wk;
        }
    }
    A(i, i) += diag;
}

}  // namespace

Eigen::MatrixXd assemble_fractional(const Grid& grid, const FractionalParams& params,
                                    Exec exec) {
    if (grid.dim() != params.n) throw GridMismatch("grid dimension != params.n");
    const int N = grid.n_interior();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
    const auto shape = grid.lattice_shape();

    if (grid.dim() == 1) {
        const KernelTable1D t = build_kernel_table_1d(grid.h(), params.s, shape[0]);
        if (exec == Exec::Parallel) {
            par::for_range(N, [&](std::int64_t i) {
                fractional_row_1d(grid, params, t, static_cast<int>(i), A);
            });
        } else {
            for (int i = 0; i < N; ++i) fractional_row_1d(grid, params, t, i, A);
        }
    } else {
        const KernelTable2D t =
            build_kernel_table_2d(grid.h(), params.s, shape[0], shape[1]);
        if (exec == Exec::Parallel) {
            par::for_range(N, [&](std::int64_t i) {
                fractional_row_2d(grid, params, t, static_cast<int>(i), A);
            });
        } else {
            for (int i = 0; i < N; ++i) fractional_row_2d(grid, params, t, i, A);
        }
    }

    // Symmetry is structural; make it exact against quadrature ordering.
    A = 0.5 * (A + A.transpose()).eval();
    return A;
}

ExplicitValueOperator::ExplicitValueOperator(GridPtr grid, FractionalParams params,
                                             double reach)
    : grid_(std::move(grid)), params_(params) {
    const double h = grid_->h();
    const int M = static_cast<int>(std::ceil(reach / h)) + 1;
    if (params_.n == 1) {
        t1_ = build_kernel_table_1d(h, params_.s, M);
    } else {
        t2_ = build_kernel_table_2d(h, params_.s, M, M);
    }
}

double ExplicitValueOperator::apply_local(const std::function<double(Point)>& w,
                                          int i) const {
    const double h = grid_->h();
    const Point x = grid_->point(i);
    const double wx = w(x);
    double acc = 0.0;
    for (int a = 0; a < params_.n; ++a) {
        Point xp = x, xm = x;
        xp[a] += h;
        xm[a] -= h;
        acc += (2.0 * wx - w(xp) - w(xm)) / (h * h);
    }
    return acc;
}

double ExplicitValueOperator::apply_fractional(const std::function<double(Point)>& w,
                                               int i) const {
    const double c = params_.c_ns;
    const double h = grid_->h();
    const Point x = grid_->point(i);
    const double wx = w(x);

    if (params_.n == 1) {
        double acc = t1_.tail * wx;
        for (int m = 1; m <= t1_.M; ++m) {
            const double d2 = w({x[0] + m * h, 0.0}) + w({x[0] - m * h, 0.0}) - 2.0 * wx;
            acc -= t1_.gamma[static_cast<std::size_t>(m)] * d2;
        }
        return c * acc;
    }

    double acc = t2_.tail * wx;
    // Near model
    double tr = 0.0;
    for (int a = 0; a < 2; ++a) {
        Point xp = x, xm = x;
        xp[a] += h;
        xm[a] -= h;
        tr += (w(xp) + w(xm) - 2.0 * wx) / (h * h);
    }
    acc -= 0.5 * t2_.K_near * tr;
    // Mid field over the half-space, symmetric pairs taken together
    for (int ky = 0; ky <= t2_.My + 1; ++ky) {
        const int kx_begin = (ky == 0) ? 1 : -(t2_.Mx + 1);
        for (int kx = kx_begin; kx <= t2_.Mx + 1; ++kx) {
            const double wk = t2_.w(std::abs(kx), std::abs(ky));
            if (wk == 0.0) continue;
            const double d2 = w({x[0] + kx * h, x[1] + ky * h}) +
                              w({x[0] - kx * h, x[1] - ky * h}) - 2.0 * wx;
            acc -= wk * d2;
        }
    }
    return c * acc;
}

double ExplicitValueOperator::apply(const std::function<double(Point)>& w, int i,
                                    double lambda) const {
    return apply_local(w, i) + apply_fractional(w, i) + lambda * w(grid_->point(i));
}

}  // namespace mixlap
