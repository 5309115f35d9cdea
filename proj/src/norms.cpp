#include "mixlap/norms.hpp"

#include <cmath>
#include <optional>

#include "mixlap/errors.hpp"
#include "mixlap/parallel.hpp"

namespace mixlap {

double lp_norm(const GridFunction& u, double p) {
    if (!(p >= 1.0)) throw ConfigError("p must be >= 1");
    const double hn = std::pow(u.grid->h(), u.grid->dim());
    const double acc = par::sum(u.values.size(), [&](std::int64_t i) {
        return std::pow(std::abs(u.values[i]), p);
    });
    return std::pow(hn * acc, 1.0 / p);
}

double linf_norm(const GridFunction& u) { return u.max_abs(); }

namespace {

/// Value usable in a difference stencil: interior value, or exact 0 when the
/// lattice node lies on the boundary itself. Nodes beyond the boundary are
/// rejected (the zero extension has a kink there).
std::optional<double> fd_value(const GridFunction& u, int ix, int iy) {
    const Grid& g = *u.grid;
    const int j = g.interior_index(ix, iy);
    if (j >= 0) return u.values[j];
    const auto shape = g.lattice_shape();
    if (ix < 0 || ix >= shape[0] || iy < 0 || iy >= shape[1]) return std::nullopt;
    const Point p = g.lattice_point(ix, iy);
    const double d = g.domain().signed_boundary_distance(p);
    if (std::abs(d) <= 1e-9 * g.h()) return 0.0;
    return std::nullopt;
}

struct Diff {
    double value = 0.0;
    bool one_sided = false;
    bool ok = false;
};

Diff first_diff(const GridFunction& u, int ix, int iy, int ax) {
    const double h = u.grid->h();
    const int dx = ax == 0 ? 1 : 0, dy = ax == 1 ? 1 : 0;
    const auto vp = fd_value(u, ix + dx, iy + dy);
    const auto vm = fd_value(u, ix - dx, iy - dy);
    const auto v0 = fd_value(u, ix, iy);
    Diff d;
    if (vp && vm) {
        d = {(*vp - *vm) / (2.0 * h), false, true};
    } else if (vp && v0) {
        d = {(*vp - *v0) / h, true, true};
    } else if (vm && v0) {
        d = {(*v0 - *vm) / h, true, true};
    }
    return d;
}

Diff second_diff(const GridFunction& u, int ix, int iy, int ax) {
    const double h = u.grid->h();
    const int dx = ax == 0 ? 1 : 0, dy = ax == 1 ? 1 : 0;
    const auto vp = fd_value(u, ix + dx, iy + dy);
    const auto vm = fd_value(u, ix - dx, iy - dy);
    const auto v0 = fd_value(u, ix, iy);
    Diff d;
    if (vp && vm && v0) {
        d = {(*vp - 2.0 * *v0 + *vm) / (h * h), false, true};
        return d;
    }
    // shifted stencil, order h
    const auto vp2 = fd_value(u, ix + 2 * dx, iy + 2 * dy);
    if (v0 && vp && vp2) {
        d = {(*v0 - 2.0 * *vp + *vp2) / (h * h), true, true};
        return d;
    }
    const auto vm2 = fd_value(u, ix - 2 * dx, iy - 2 * dy);
    if (v0 && vm && vm2) {
        d = {(*v0 - 2.0 * *vm + *vm2) / (h * h), true, true};
    }
    return d;
}

Diff mixed_diff(const GridFunction& u, int ix, int iy) {
    const double h = u.grid->h();
    // centered cross first, then one-sided corners
    const auto vpp = fd_value(u, ix + 1, iy + 1);
    const auto vpm = fd_value(u, ix + 1, iy - 1);
    const auto vmp = fd_value(u, ix - 1, iy + 1);
    const auto vmm = fd_value(u, ix - 1, iy - 1);
    Diff d;
    if (vpp && vpm && vmp && vmm) {
        d = {(*vpp - *vpm - *vmp + *vmm) / (4.0 * h * h), false, true};
        return d;
    }
    const auto v0 = fd_value(u, ix, iy);
    if (!v0) return d;
    for (int sx : {1, -1}) {
        for (int sy : {1, -1}) {
            const auto a = fd_value(u, ix + sx, iy + sy);
            const auto b = fd_value(u, ix + sx, iy);
            const auto c = fd_value(u, ix, iy + sy);
            if (a && b && c) {
                d = {(*a - *b - *c + *v0) / (sx * sy * h * h), true, true};
                return d;
            }
        }
    }
    return d;
}

}  // namespace

WkpNorm discrete_wkp_norm(const GridFunction& u, int k, double p) {
    if (k < 0 || k > 2) throw ConfigError("k must be 0, 1 or 2");
    if (!(p > 1.0 && std::isfinite(p))) throw ConfigError("p must lie in (1, inf)");
    const Grid& g = *u.grid;
    const int N = g.n_interior();
    if (k >= 1 && N < 3) throw TooFewNodes("need at least 3 interior nodes for k >= 1");
    const int n = g.dim();
    const double hn = std::pow(g.h(), n);

    double acc = 0.0;
    int flagged = 0;
    for (int i = 0; i < N; ++i) {
        const auto [ix, iy] = g.lattice_coords(i);
        bool one_sided_here = false;
        double node_acc = std::pow(std::abs(u.values[i]), p);
        if (k >= 1) {
            for (int ax = 0; ax < n; ++ax) {
                const Diff d = first_diff(u, ix, iy, ax);
                if (d.ok) node_acc += std::pow(std::abs(d.value), p);
                one_sided_here |= d.one_sided;
            }
        }
        if (k >= 2) {
            for (int ax = 0; ax < n; ++ax) {
                const Diff d = second_diff(u, ix, iy, ax);
                if (d.ok) node_acc += std::pow(std::abs(d.value), p);
                one_sided_here |= d.one_sided;
            }
            if (n == 2) {
                const Diff d = mixed_diff(u, ix, iy);
                if (d.ok) node_acc += std::pow(std::abs(d.value), p);
                one_sided_here |= d.one_sided;
            }
        }
        acc += node_acc;
        if (one_sided_here) ++flagged;
    }
    return {std::pow(hn * acc, 1.0 / p), flagged};
}

}  // namespace mixlap
