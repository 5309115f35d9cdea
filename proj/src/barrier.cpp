#include "mixlap/barrier.hpp"

#include <cmath>

#include "mixlap/errors.hpp"
#include "mixlap/norms.hpp"
#include "mixlap/parallel.hpp"

namespace mixlap {

double Barrier::value(const Point& p) const {
    const double r = dist(p, x0, n);
    if (r > R) return 0.0;
    return 1.0 - std::exp(beta * (r * r - R * R));
}

double Barrier::neg_laplacian_closed_form(const Point& p) const {
    const double r = dist(p, x0, n);
    return std::exp(beta * (r * r - R * R)) * (2.0 * n * beta + 4.0 * beta * beta * r * r);
}

namespace {

double radial_max(double R, const std::function<double(double)>& f) {
    double m = 0.0;
    const int K = 4096;
    for (int i = 0; i <= K; ++i) m = std::max(m, f(R * i / K));
    return m;
}

}  // namespace

double Barrier::third_derivative_bound() const {
    const double b = beta, RR = R * R;
    return radial_max(R, [&](double r) {
        return std::exp(b * (r * r - RR)) * (12.0 * b * b * r + 8.0 * b * b * b * r * r * r);
    });
}

double Barrier::fourth_derivative_bound() const {
    const double b = beta, RR = R * R;
    return radial_max(R, [&](double r) {
        const double r2 = r * r;
        return std::exp(b * (r2 - RR)) *
               (12.0 * b * b + 48.0 * b * b * b * r2 + 16.0 * b * b * b * b * r2 * r2);
    });
}

namespace {

double sup_closure_dist(const Domain& dom, const Point& x0) {
    switch (dom.kind()) {
        case DomainKind::Interval:
            return std::max(std::abs(dom.a() - x0[0]), std::abs(dom.b() - x0[0]));
        case DomainKind::Ball:
            return dist(dom.ball_center(), x0, 2) + dom.radius();
        case DomainKind::Rectangle: {
            double m = 0.0;
            for (double cx : {dom.lo()[0], dom.hi()[0]})
                for (double cy : {dom.lo()[1], dom.hi()[1]})
                    m = std::max(m, dist({cx, cy}, x0, 2));
            return m;
        }
    }
    return 0.0;
}

}  // namespace

std::pair<Point, double> choose_annulus(const Domain& domain) {
    double offset = 1.25 * domain.diameter();
    for (int attempt = 0; attempt < 40; ++attempt) {
        Point x0 = domain.center();
        x0[0] -= offset;
        const double sup = sup_closure_dist(domain, x0);
        const double inf = domain.distance_to_closure(x0);
        double R = sup * 4.0 / 3.0;
        for (int bump = 0; bump < 100; ++bump) {
            R *= 1.05;
            if (sup < 0.75 * R && inf > 0.25 * R) {
                // final verification on boundary samples
                bool ok = true;
                for (const Point& p : domain.boundary_samples(256)) {
                    const double r = dist(p, x0, domain.dim());
                    ok = ok && (r > 0.25 * R && r < 0.75 * R);
                }
                if (ok) return {x0, R};
            }
            if (0.25 * R >= inf) break;  // window closed, grow the offset
        }
        offset *= 1.5;
    }
    throw AnnulusFailure("no admissible (x0, R) found for this domain");
}

SupersolutionResult verify_supersolution(const GridPtr& grid,
                                         const FractionalParams& params, Point x0,
                                         double R, double beta_max) {
    const int N = grid->n_interior();
    // Annulus inclusion on interior nodes first.
    for (int i = 0; i < N; ++i) {
        const double r = dist(grid->point(i), x0, grid->dim());
        if (!(r > 0.25 * R && r < 0.75 * R))
            throw AnnulusFailure("interior node violates R/4 < |x-x0| < 3R/4");
    }

    const double reach = 1.75 * R;  // |y-x| <= R + 3R/4 whenever w(y) != 0
    const ExplicitValueOperator evo(grid, params, reach);

    std::vector<double> betas = {1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2};
    for (double b = 1.0; b <= beta_max; b *= 2.0) betas.push_back(b);

    const auto min_L = [&](const Barrier& w) {
        std::vector<double> vals(static_cast<std::size_t>(N));
        par::for_range(N, [&](std::int64_t i) {
            vals[static_cast<std::size_t>(i)] =
                evo.apply([&](Point p) { return w.value(p); }, static_cast<int>(i), 0.0);
        });
        double m = vals[0];
        for (double v : vals) m = std::min(m, v);
        return m;
    };

    Barrier best;
    best.x0 = x0;
    best.R = R;
    best.n = grid->dim();
    best.grid = grid;
    double best_alpha = -std::numeric_limits<double>::infinity();
    for (double b : betas) {
        Barrier w = best;
        w.beta = b;
        const double alpha = min_L(w);
        if (alpha > best_alpha) {
            best_alpha = alpha;
            best.beta = b;
        }
        if (alpha >= 1.0) break;
    }
    if (!(best_alpha > 0.0))
        throw NoSupersolution("best alpha0 over the beta sweep is " +
                              std::to_string(best_alpha));

    SupersolutionResult res;
    res.alpha0 = best_alpha;
    best.scale = best_alpha >= 1.0 ? 1.0 : 1.0 / best_alpha;
    res.barrier = best;
    res.min_scaled = best.scale * best_alpha;

    const double d3 = best.scale * 3.0 * res.barrier.third_derivative_bound();
    res.eps_h = 10.0 * grid->h() * grid->h() * d3;

    AuditReport& rep = res.report;
    rep.audit = "barrier_supersolution";
    rep.add("min L_h(scale*w) >= 1 - eps_h", res.min_scaled, 1.0 - res.eps_h,
            res.min_scaled >= 1.0 - res.eps_h,
            "eps_h = 10 h^2 * (3x radial third-derivative bound), reported");
    double wmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < N; ++i)
        wmin = std::min(wmin, res.barrier.value(grid->point(i)));
    rep.add("w > 0 on interior nodes", wmin, 0.0, wmin > 0.0, "exact");

    // Local stencil vs the closed form, O(h^2) with the 4th-derivative bound.
    double worst_local = 0.0;
    for (int i = 0; i < N; ++i) {
        const double num =
            evo.apply_local([&](Point p) { return res.barrier.value(p); }, i);
        const double exact = res.barrier.neg_laplacian_closed_form(grid->point(i));
        worst_local = std::max(worst_local, std::abs(num - exact));
    }
    const double local_tol = 4.0 * grid->dim() / 12.0 * grid->h() * grid->h() *
                             res.barrier.fourth_derivative_bound();
    rep.add("local part matches -Delta w closed form", worst_local, local_tol,
            worst_local <= local_tol,
            "(n/12) h^2 max|w''''| with safety factor 4");
    rep.details["beta"] = res.barrier.beta;
    rep.details["scale"] = res.barrier.scale;
    rep.details["alpha0_raw"] = res.alpha0;
    rep.details["eps_h"] = res.eps_h;
    rep.details["x0"] = {x0[0], x0[1]};
    rep.details["R"] = R;
    return res;
}

AuditReport concave_transform_check(const Barrier& barrier,
                                    const OperatorAssembly& op, double lambda) {
    if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
    if (!barrier.grid || !(barrier.scale > 0.0))
        throw ConfigError("barrier must come from verify_supersolution");
    const GridPtr grid = op.grid;
    const int N = grid->n_interior();

    const auto phi = [lambda](double t) {
        return (1.0 - std::exp(-lambda * t)) / lambda;
    };
    const auto dphi = [lambda](double t) { return std::exp(-lambda * t); };
    const auto v = [&](Point p) { return phi(barrier.scaled_value(p)); };

    const ExplicitValueOperator evo(grid, op.params, 1.75 * barrier.R);
    std::vector<double> lv(static_cast<std::size_t>(N));
    par::for_range(N, [&](std::int64_t i) {
        lv[static_cast<std::size_t>(i)] = evo.apply(v, static_cast<int>(i), lambda);
    });
    double worst = std::numeric_limits<double>::infinity();
    int worst_node = 0;
    for (int i = 0; i < N; ++i) {
        if (lv[static_cast<std::size_t>(i)] < worst) {
            worst = lv[static_cast<std::size_t>(i)];
            worst_node = i;
        }
    }

    // Reported slack: h^2 times a sampled radial third-derivative bound of
    // phi(scale * w) (profile is analytic; crude tensor-mix factor 3).
    const double b = barrier.beta, R2 = barrier.R * barrier.R, sc = barrier.scale;
    const auto prof = [&](double r) { return sc * (1.0 - std::exp(b * (r * r - R2))); };
    double d3 = 0.0;
    {
        const int K = 2048;
        const double dr = barrier.R / K;
        for (int i = 2; i + 2 <= K; ++i) {
            const double r = i * dr;
            const double p2 = phi(prof(r + 2 * dr)), p1 = phi(prof(r + dr)),
                         m1 = phi(prof(r - dr)), m2 = phi(prof(r - 2 * dr));
            const double third = (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * dr * dr * dr);
            d3 = std::max(d3, std::abs(third));
        }
    }
    const double eps_h = 10.0 * grid->h() * grid->h() * 3.0 * d3;

    AuditReport rep;
    rep.audit = "concave_transform";
    rep.add("(L_h + lambda) phi(w) >= 1 - eps_h", worst, 1.0 - eps_h,
            worst >= 1.0 - eps_h,
            "eps_h = 10 h^2 * (3x sampled radial third-derivative bound of phi(w))");
    rep.details["worst_node"] = worst_node;
    rep.details["eps_h"] = eps_h;
    rep.details["sup_phi"] = phi(barrier.scale * 1.0);  // phi is increasing

    // Pointwise concavity on kernel-coupled pairs (W_ij > 0).
    int violations = 0;
    for (int i = 0; i < N; ++i) {
        const double wi = barrier.scaled_value(grid->point(i));
        for (int j = 0; j < N; ++j) {
            if (i == j || -op.A_frac(i, j) <= 0.0) continue;
            const double wj = barrier.scaled_value(grid->point(j));
            const double lhs = phi(wi) - phi(wj);
            const double rhs = dphi(wi) * (wi - wj);
            const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
            if ((lhs - rhs) / scale < -1e-12) ++violations;
        }
    }
    rep.add("pairwise phi(w_i)-phi(w_j) >= phi'(w_i)(w_i-w_j)", violations, 0,
            violations == 0, "exact concavity; 1e-12 relative roundoff floor");
    if (!rep.pass) {
        rep.details["worst_margin"] = worst - (1.0 - eps_h);
        throw TransformFailed("concave transform check failed at node " +
                              std::to_string(worst_node) + " with margin " +
                              std::to_string(worst - (1.0 - eps_h)));
    }
    return rep;
}

AuditReport comparison_bound(const OperatorAssembly& op, double lambda,
                             const GridFunction& h_rhs) {
    if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
    check_same_grid(h_rhs, op);
    const int N = op.size();
    const DirectSolver solver(op, lambda);

    GridFunction ones(op.grid);
    ones.values.setOnes();
    const GridFunction w = solver.solve(ones);

    const double wmin = w.values.minCoeff();
    const double wmax = w.values.maxCoeff();
    if (wmin < -1e-9)
        throw MaxPrincipleViolated("w_lambda has a significantly negative node");

    AuditReport rep;
    rep.audit = "comparison_bound";
    rep.add("w_lambda >= 0 nodally", wmin, 0.0, wmin >= -1e-12,
            "M-matrix inverse positivity; 1e-12 roundoff floor");
    rep.add("max w_lambda < 1/lambda", wmax, 1.0 / lambda, wmax < 1.0 / lambda,
            "strict; margin reported in details");
    rep.details["margin"] = 1.0 / lambda - wmax;
    rep.details["lambda_times_max_w"] = lambda * wmax;

    const double hmax = linf_norm(h_rhs);
    if (hmax > 0.0) {
        const GridFunction u = solver.solve(h_rhs);
        const double umax = linf_norm(u);
        rep.add("||u||_inf <= ||w_lambda||_inf * ||h||_inf", umax, wmax * hmax,
                umax <= wmax * hmax * (1.0 + 1e-12),
                "nodal comparison via monotonicity; 1e-12 relative floor");
        int nodal_viol = 0;
        for (int i = 0; i < N; ++i) {
            if (std::abs(u.values[i]) >
                hmax * w.values[i] + 1e-12 * std::max(1.0, hmax * wmax))
                ++nodal_viol;
        }
        rep.add("|u_i| <= ||h||_inf * w_i nodally", nodal_viol, 0, nodal_viol == 0,
                "monotonicity applied to ||h|| w +/- u; 1e-12 absolute floor");
        if (nodal_viol > 0)
            throw MaxPrincipleViolated("nodal comparison failed (sign structure bug)");
    } else {
        const GridFunction u = solver.solve(h_rhs);
        rep.add("h == 0 gives u == 0", linf_norm(u), 0.0, linf_norm(u) <= 1e-14,
                "uniqueness of the trivial solution");
    }
    return rep;
}

}  // namespace mixlap
