#pragma once

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "mixlap/domain.hpp"

namespace mixlap {

/// Uniform axis-aligned lattice over the bounding box of a domain.
/// Lattice nodes strictly inside the domain are "interior"; everything
/// else (including nodes on the boundary) carries the exterior value 0.
class Grid {
public:
    Grid(Domain domain, double h);

    const Domain& domain() const { return domain_; }
    double h() const { return h_; }
    int dim() const { return domain_.dim(); }

    int n_interior() const { return static_cast<int>(nodes_.size()); }
    int n_lattice() const { return npts_[0] * npts_[1]; }
    /// Lattice points per axis (npts[1] == 1 in 1D).
    std::array<int, 2> lattice_shape() const { return npts_; }

    Point lattice_point(int ix, int iy) const {
        return {origin_[0] + ix * h_, origin_[1] + iy * h_};
    }
    /// Interior index of lattice cell (ix, iy), or -1.
    int interior_index(int ix, int iy) const {
        if (ix < 0 || ix >= npts_[0] || iy < 0 || iy >= npts_[1]) return -1;
        return interior_of_lattice_[static_cast<std::size_t>(iy) * npts_[0] + ix];
    }
    /// Lattice coordinates of interior node i.
    std::array<int, 2> lattice_coords(int i) const { return nodes_[i]; }
    Point point(int i) const {
        return lattice_point(nodes_[i][0], nodes_[i][1]);
    }
    double boundary_distance(int i) const;

    /// Structural identity; used for GridMismatch checks.
    bool same_layout(const Grid& other) const {
        return npts_ == other.npts_ && h_ == other.h_ &&
               origin_ == other.origin_ && n_interior() == other.n_interior();
    }

private:
    Domain domain_;
    double h_ = 0.0;
    Point origin_{0.0, 0.0};
    std::array<int, 2> npts_{0, 1};
    std::vector<int> interior_of_lattice_;       // lattice -> interior or -1
    std::vector<std::array<int, 2>> nodes_;      // interior -> lattice coords
    std::vector<double> bdist_;                  // per interior node
};

using GridPtr = std::shared_ptr<const Grid>;

Grid build_grid(const Domain& domain, double h);
GridPtr make_grid(const Domain& domain, double h);

/// Nodal values on the interior nodes; implicitly zero everywhere else.
struct GridFunction {
    GridPtr grid;
    Eigen::VectorXd values;

    GridFunction() = default;
    explicit GridFunction(GridPtr g)
        : grid(std::move(g)), values(Eigen::VectorXd::Zero(grid->n_interior())) {}
    GridFunction(GridPtr g, Eigen::VectorXd v);

    /// Value at a lattice cell; exactly 0 off the interior (zero extension).
    double at_lattice(int ix, int iy) const {
        const int i = grid->interior_index(ix, iy);
        return i < 0 ? 0.0 : values[i];
    }
    double max_abs() const {
        return values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
    }
};

/// Sample f(x) on the interior nodes.
GridFunction sample(const GridPtr& grid, const std::function<double(Point)>& f);

}  // namespace mixlap
