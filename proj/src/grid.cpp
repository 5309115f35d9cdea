#include "mixlap/grid.hpp"

#include <cmath>
#include <functional>

#include "mixlap/errors.hpp"

namespace mixlap {

Grid::Grid(Domain domain, double h) : domain_(std::move(domain)), h_(h) {
    if (!(h > 0.0)) throw BadSpacing("h must be positive");
    // the canonical coarse grids sit exactly at h = diam/4
    if (!(h <= domain_.diameter() / 4.0 * (1.0 + 1e-12)))
        throw BadSpacing("h must satisfy h <= diam(domain)/4");

    const auto box = domain_.bounding_box();
    origin_ = box[0];
    const int n = domain_.dim();
    for (int a = 0; a < n; ++a) {
        const double len = box[1][a] - box[0][a];
        npts_[a] = static_cast<int>(std::floor(len / h + 1e-12)) + 1;
    }
    if (n == 1) npts_[1] = 1;

    interior_of_lattice_.assign(static_cast<std::size_t>(npts_[0]) * npts_[1], -1);
    for (int iy = 0; iy < npts_[1]; ++iy) {
        for (int ix = 0; ix < npts_[0]; ++ix) {
            const Point p = lattice_point(ix, iy);
            if (domain_.contains(p)) {
                interior_of_lattice_[static_cast<std::size_t>(iy) * npts_[0] + ix] =
                    static_cast<int>(nodes_.size());
                nodes_.push_back({ix, iy});
                bdist_.push_back(domain_.signed_boundary_distance(p));
            }
        }
    }
    if (nodes_.empty()) throw EmptyInterior("no lattice node falls inside the domain");
}

double Grid::boundary_distance(int i) const {
    if (i < 0 || i >= n_interior()) throw NotInterior("index out of interior range");
    return bdist_[static_cast<std::size_t>(i)];
}

Grid build_grid(const Domain& domain, double h) { return Grid(domain, h); }

GridPtr make_grid(const Domain& domain, double h) {
    return std::make_shared<const Grid>(domain, h);
}

GridFunction::GridFunction(GridPtr g, Eigen::VectorXd v)
    : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid->n_interior())
        throw GridMismatch("value vector size != interior node count");
    if (!values.allFinite()) throw ConfigError("grid function values must be finite");
}

GridFunction sample(const GridPtr& grid, const std::function<double(Point)>& f) {
    GridFunction u(grid);
    for (int i = 0; i < grid->n_interior(); ++i) u.values[i] = f(grid->point(i));
    return u;
}

}  // namespace mixlap
