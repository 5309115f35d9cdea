#pragma once

#include "mixlap/grid.hpp"

namespace mixlap {

/// Nodal quadrature norm (h^n sum |u_i|^p)^{1/p}.
double lp_norm(const GridFunction& u, double p);
double linf_norm(const GridFunction& u);

/// Discrete W^{k,p} norm: (sum_{|alpha|<=k} ||D^alpha_h u||_p^p)^{1/p}.
/// Centered differences where the stencil stays inside the closure of the
/// domain (lattice nodes lying exactly on the boundary carry the value 0);
/// one-sided order-h formulas otherwise, with the node count flagged.
struct WkpNorm {
    double value = 0.0;
    int one_sided_nodes = 0;
};

WkpNorm discrete_wkp_norm(const GridFunction& u, int k, double p);

}  // namespace mixlap
