#include "mixlap/semilinear.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "mixlap/errors.hpp"
#include "mixlap/norms.hpp"

namespace mixlap {

Nonlinearity make_nonlinearity(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("name"))
        throw ConfigError("nonlinearity: missing \"name\"");
    const std::string name = spec.at("name").get<std::string>();
    const auto get = [&](const char* key, double dflt) {
        return spec.contains(key) ? spec.at(key).get<double>() : dflt;
    };

    Nonlinearity nl;
    nl.name = name;
    if (name == "zero") {
        nl.g = [](Point, double) { return 0.0; };
        nl.growth_c = get("c", 1.0);
        nl.growth_q = get("q", 2.0);
        nl.t_independent = true;
    } else if (name == "const") {
        const double v = get("value", 1.0);
        nl.g = [v](Point, double) { return v; };
        nl.growth_c = get("c", std::max(1.0, std::abs(v)));
        nl.growth_q = get("q", 2.0);
        nl.t_independent = true;
    } else if (name == "linear") {
        const double a = get("a", 0.0), b = get("b", -1.0);
        nl.g = [a, b](Point, double t) { return a + b * t; };
        nl.growth_c = get("c", std::abs(a) + std::abs(b));
        nl.growth_q = get("q", 2.0);
        nl.t_independent = (b == 0.0);
    } else if (name == "sin") {
        const double amp = get("amp", 1.0);
        nl.g = [amp](Point, double t) { return amp * std::sin(t); };
        nl.growth_c = get("c", std::max(1.0, std::abs(amp)));
        nl.growth_q = get("q", 2.0);
    } else if (name == "cubic") {
        const double amp = get("amp", 1.0);
        nl.g = [amp](Point, double t) { return amp * t * t * t; };
        nl.growth_c = get("c", std::max(1.0, std::abs(amp)));
        nl.growth_q = get("q", 4.0);
    } else if (name == "logistic") {
        const double rate = get("rate", 1.0), cap = get("cap", 1.0);
        nl.g = [rate, cap](Point, double t) { return rate * t * (1.0 - t / cap); };
        nl.growth_c = get("c", 2.0 * std::abs(rate) * std::max(1.0, 1.0 / cap));
        nl.growth_q = get("q", 3.0);
    } else {
        throw ConfigError("nonlinearity: unknown catalog entry \"" + name + "\"");
    }
    if (!(nl.growth_c > 0.0)) throw ConfigError("nonlinearity: c must be > 0");
    if (!(nl.growth_q >= 2.0)) throw ConfigError("nonlinearity: q must be >= 2");
    return nl;
}

AuditReport check_growth(const Nonlinearity& nl, const Grid& grid,
                         const std::vector<double>& t_samples) {
    if (t_samples.empty()) throw ConfigError("t_samples must be nonempty");
    AuditReport rep;
    rep.audit = "growth";
    double max_ratio = 0.0;
    Point worst_x{0, 0};
    double worst_t = 0.0;
    for (int i = 0; i < grid.n_interior(); ++i) {
        const Point x = grid.point(i);
        for (double t : t_samples) {
            const double ratio = std::abs(nl.g(x, t)) /
                                 (1.0 + std::pow(std::abs(t), nl.growth_q - 1.0));
            if (ratio > max_ratio) {
                max_ratio = ratio;
                worst_x = x;
                worst_t = t;
            }
        }
    }
    rep.fitted_constant = max_ratio;
    rep.add("growth_envelope |g|/(1+|t|^{q-1}) <= c", max_ratio, nl.growth_c,
            max_ratio <= nl.growth_c, "claimed constant c from the catalog entry");
    rep.details["worst_t"] = worst_t;
    rep.details["worst_x"] = {worst_x[0], worst_x[1]};
    rep.details["q"] = nl.growth_q;
    return rep;
}

std::pair<GridFunction, SemilinearTrace> solve_semilinear(
    const OperatorAssembly& op, const Nonlinearity& nl, double lambda, double tol,
    int max_iter, bool keep_iterates) {
    if (!(tol > 0.0)) throw ConfigError("tol must be positive");
    check_same_grid(GridFunction(op.grid), op);

    SemilinearTrace trace;
    trace.lambda = lambda;
    trace.tol = tol;

    const DirectSolver solver(op, lambda);
    const int N = op.size();

    GridFunction u(op.grid);  // u_0 = 0
    if (keep_iterates) trace.iterates.push_back(u);

    double g0_max = 0.0;
    for (int i = 0; i < N; ++i)
        g0_max = std::max(g0_max, std::abs(nl.g(op.grid->point(i), 0.0)));
    const double blowup = 1e6 * (1.0 + g0_max);

    for (int k = 1; k <= max_iter; ++k) {
        GridFunction rhs(op.grid);
        for (int i = 0; i < N; ++i)
            rhs.values[i] = nl.g(op.grid->point(i), u.values[i]) + lambda * u.values[i];
        GridFunction next = solver.solve(rhs);
        const double step = (next.values - u.values).cwiseAbs().maxCoeff();
        u = std::move(next);
        if (keep_iterates) trace.iterates.push_back(u);
        trace.step_inf.push_back(step);
        const double res = weak_residual(op, u, nl);
        trace.residual_inf.push_back(res);

        if (linf_norm(u) > blowup)
            throw Diverged("iterate exceeded 1e6 (1 + ||g(.,0)||_inf)");
        if (step < tol && res < 9.5 * tol) {
            trace.converged = true;
            return {std::move(u), std::move(trace)};
        }
    }
    throw MaxIterExceeded("solve_semilinear did not converge");
}

double weak_residual(const OperatorAssembly& op, const GridFunction& u,
                     const Nonlinearity& nl) {
    check_same_grid(u, op);
    const GridFunction Au = apply_mixed(op, u, 0.0);
    double res = 0.0;
    for (int i = 0; i < op.size(); ++i) {
        res = std::max(res, std::abs(Au.values[i] -
                                     nl.g(op.grid->point(i), u.values[i])));
    }
    return res;
}

}  // namespace mixlap
