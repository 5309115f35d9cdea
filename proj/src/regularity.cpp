#include "mixlap/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "mixlap/errors.hpp"
#include "mixlap/solver.hpp"

namespace mixlap {

namespace {

/// Interior value, or 0 at lattice nodes lying exactly on the boundary.
std::optional<double> stencil_value(const GridFunction& u, int ix, int iy) {
    const Grid& g = *u.grid;
    const int j = g.interior_index(ix, iy);
    if (j >= 0) return u.values[j];
    const auto shape = g.lattice_shape();
    if (ix < 0 || ix >= shape[0] || iy < 0 || iy >= shape[1]) return std::nullopt;
    if (std::abs(g.domain().signed_boundary_distance(g.lattice_point(ix, iy))) <=
        1e-9 * g.h())
        return 0.0;
    return std::nullopt;
}

struct Samples {
    // per lattice cell: sample vector (u itself, or the centered gradient)
    std::vector<std::optional<std::array<double, 2>>> v;
    std::array<int, 2> shape;
    int components = 1;
    std::optional<std::array<double, 2>> at(int ix, int iy) const {
        if (ix < 0 || ix >= shape[0] || iy < 0 || iy >= shape[1]) return std::nullopt;
        return v[static_cast<std::size_t>(iy) * shape[0] + ix];
    }
};

Samples derivative_samples(const GridFunction& u, int order) {
    const Grid& g = *u.grid;
    const auto shape = g.lattice_shape();
    Samples s;
    s.shape = shape;
    s.components = (order == 0) ? 1 : g.dim();
    s.v.assign(static_cast<std::size_t>(shape[0]) * shape[1], std::nullopt);
    const double h = g.h();
    for (int iy = 0; iy < shape[1]; ++iy) {
        for (int ix = 0; ix < shape[0]; ++ix) {
            const int j = g.interior_index(ix, iy);
            if (j < 0) continue;
            if (order == 0) {
                s.v[static_cast<std::size_t>(iy) * shape[0] + ix] = {u.values[j], 0.0};
                continue;
            }
            std::array<double, 2> grad{0.0, 0.0};
            bool ok = true;
            for (int ax = 0; ax < g.dim(); ++ax) {
                const int dx = ax == 0 ? 1 : 0, dy = ax == 1 ? 1 : 0;
                const auto vp = stencil_value(u, ix + dx, iy + dy);
                const auto vm = stencil_value(u, ix - dx, iy - dy);
                if (!vp || !vm) {
                    ok = false;
                    break;
                }
                grad[static_cast<std::size_t>(ax)] = (*vp - *vm) / (2.0 * h);
            }
            if (ok) s.v[static_cast<std::size_t>(iy) * shape[0] + ix] = grad;
        }
    }
    return s;
}

double sample_dist(const std::array<double, 2>& a, const std::array<double, 2>& b,
                   int components) {
    double acc = 0.0;
    for (int c = 0; c < components; ++c) acc += (a[c] - b[c]) * (a[c] - b[c]);
    return std::sqrt(acc);
}

}  // namespace

HolderFit holder_fit(const GridFunction& u, int derivative_order) {
    if (derivative_order != 0 && derivative_order != 1)
        throw ConfigError("derivative_order must be 0 or 1");
    const Grid& g = *u.grid;
    const double h = g.h();
    const auto shape = g.lattice_shape();

    const Samples s = derivative_samples(u, derivative_order);

    HolderFit fit;
    for (int j = 0; j <= 10; ++j) {
        const int sep = 1 << j;
        if (sep >= std::max(shape[0], shape[1])) break;
        double omega = 0.0;
        bool any = false;
        for (int iy = 0; iy < shape[1]; ++iy) {
            for (int ix = 0; ix < shape[0]; ++ix) {
                const auto a = s.at(ix, iy);
                if (!a) continue;
                if (const auto b = s.at(ix + sep, iy)) {
                    omega = std::max(omega, sample_dist(*a, *b, s.components));
                    any = true;
                }
                if (const auto b = s.at(ix, iy + sep)) {
                    omega = std::max(omega, sample_dist(*a, *b, s.components));
                    any = true;
                }
            }
        }
        if (!any) break;
        fit.r.push_back(sep * h);
        fit.omega.push_back(omega);
    }
    if (fit.r.size() < 4) throw TooFewScales("need at least 4 dyadic scales");

    // least squares on log-log, dropping exact zeros
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < fit.r.size(); ++i) {
        if (fit.omega[i] > 0.0) {
            lx.push_back(std::log(fit.r[i]));
            ly.push_back(std::log(fit.omega[i]));
        }
    }
    if (lx.size() < 2) throw TooFewScales("modulus degenerate at all scales");
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double e = ly[i] - (slope * lx[i] + intercept);
        rss += e * e;
    }
    fit.alpha_hat = slope;
    fit.fit_quality = std::sqrt(rss / n);
    return fit;
}

RefinementStudy run_refinement_study(const Domain& domain, double s,
                                     const std::function<double(Point)>& f,
                                     double lambda,
                                     const std::vector<double>& h_list,
                                     const std::vector<double>& p_list) {
    if (h_list.size() < 3) throw ConfigError("refinement study needs >= 3 levels");
    for (std::size_t i = 1; i < h_list.size(); ++i)
        if (!(h_list[i] < h_list[i - 1]))
            throw ConfigError("h_list must be strictly decreasing");

    RefinementStudy study;
    study.domain = domain;
    study.s = s;
    study.lambda = lambda;
    study.h_list = h_list;
    const FractionalParams params(domain.dim(), s);

    for (double h : h_list) {
        RefinementLevel lvl;
        lvl.h = h;
        const GridPtr grid = make_grid(domain, h);
        lvl.n_interior = grid->n_interior();
        const OperatorAssembly op = assemble(grid, params);
        lvl.f = sample(grid, f);
        lvl.u = solve_direct(op, lambda, lvl.f);
        for (double p : p_list) {
            const auto key = [&](const std::string& base) {
                return base + "_p" + std::to_string(p);
            };
            lvl.metrics[key("u_L")] = lp_norm(lvl.u, p);
            lvl.metrics[key("f_L")] = lp_norm(lvl.f, p);
            const WkpNorm w1 = discrete_wkp_norm(lvl.u, 1, p);
            const WkpNorm w2 = discrete_wkp_norm(lvl.u, 2, p);
            lvl.metrics[key("u_W1")] = w1.value;
            lvl.metrics[key("u_W2")] = w2.value;
            lvl.flagged_nodes = w2.one_sided_nodes;
        }
        try {
            const HolderFit h0 = holder_fit(lvl.u, 0);
            const HolderFit h1 = holder_fit(lvl.u, 1);
            lvl.metrics["holder_alpha_order0"] = h0.alpha_hat;
            lvl.metrics["holder_alpha_order1"] = h1.alpha_hat;
            lvl.metrics["holder_quality_order1"] = h1.fit_quality;
        } catch (const TooFewScales&) {
            // coarse levels may not support 4 dyadic scales
        }
        study.levels.push_back(std::move(lvl));
    }
    return study;
}

AuditReport stability_audit(const RefinementStudy& study, double p) {
    AuditReport rep;
    rep.audit = "w2p_stability";
    rep.advisory = study.s > 0.5;
    const auto key = [&](const std::string& base) {
        return base + "_p" + std::to_string(p);
    };
    std::vector<double> ratios;
    auto levels = nlohmann::json::array();
    for (const auto& lvl : study.levels) {
        const double w2 = lvl.metrics.at(key("u_W2"));
        const double up = lvl.metrics.at(key("u_L"));
        const double fp = lvl.metrics.at(key("f_L"));
        nlohmann::json lj{{"h", lvl.h}, {"N_int", lvl.n_interior},
                          {"flagged_nodes", lvl.flagged_nodes}};
        if (up + fp > 0.0) {
            const double ratio = w2 / (up + fp);
            ratios.push_back(ratio);
            lj["ratio"] = ratio;
        } else {
            lj["ratio"] = nullptr;  // 0/0 level skipped
        }
        levels.push_back(lj);
    }
    rep.details["levels"] = levels;
    rep.details["p"] = p;
    if (ratios.size() < 2) {
        rep.add("ratio sequence bounded", 0.0, 10.0, true,
                "fewer than 2 usable levels; vacuous");
        return rep;
    }
    const double mx = *std::max_element(ratios.begin(), ratios.end());
    const double mn = *std::min_element(ratios.begin(), ratios.end());
    rep.fitted_constant = mx;
    rep.add("max/min ratio < 10", mx / mn, 10.0, mx / mn < 10.0,
            "boundedness signature of a uniform C_1 (threshold from the audit contract)");
    return rep;
}

GridFunction random_smooth_trial(const GridPtr& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Domain& dom = grid->domain();
    GridFunction u(grid);

    if (dom.kind() == DomainKind::Interval) {
        const double a = dom.a(), len = dom.b() - dom.a();
        std::array<double, 8> coef{};
        for (auto& c : coef) c = gauss(rng);
        for (int i = 0; i < grid->n_interior(); ++i) {
            const double xi = (grid->point(i)[0] - a) / len;
            double v = 0.0;
            for (int j = 0; j < 8; ++j)
                v += coef[static_cast<std::size_t>(j)] / ((j + 1.0) * (j + 1.0)) *
                     std::sin((j + 1.0) * M_PI * xi);
            u.values[i] = v;
        }
        return u;
    }
    if (dom.kind() == DomainKind::Rectangle) {
        const Point lo = dom.lo(), hi = dom.hi();
        std::array<double, 16> coef{};
        for (auto& c : coef) c = gauss(rng);
        for (int i = 0; i < grid->n_interior(); ++i) {
            const Point p = grid->point(i);
            const double xi = (p[0] - lo[0]) / (hi[0] - lo[0]);
            const double eta = (p[1] - lo[1]) / (hi[1] - lo[1]);
            double v = 0.0;
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    v += coef[static_cast<std::size_t>(4 * j + k)] /
                         ((j + 1.0) * (j + 1.0) + (k + 1.0) * (k + 1.0)) *
                         std::sin((j + 1.0) * M_PI * xi) *
                         std::sin((k + 1.0) * M_PI * eta);
            u.values[i] = v;
        }
        return u;
    }
    // ball: bump^2 times a random quadratic polynomial
    const Point c = dom.ball_center();
    const double r = dom.radius();
    std::array<double, 6> coef{};
    for (auto& cc : coef) cc = gauss(rng);
    for (int i = 0; i < grid->n_interior(); ++i) {
        const Point p = grid->point(i);
        const double x = (p[0] - c[0]) / r, y = (p[1] - c[1]) / r;
        const double b = 1.0 - x * x - y * y;
        u.values[i] = b * b * (coef[0] + coef[1] * x + coef[2] * y + coef[3] * x * y +
                               coef[4] * x * x + coef[5] * y * y);
    }
    return u;
}

AuditReport interpolation_audit(const OperatorAssembly& op, double p,
                                const std::vector<double>& eps_list, int trials,
                                std::uint64_t seed) {
    AuditReport rep;
    rep.audit = "interpolation";
    rep.advisory = op.params.s > 0.5;

    struct TrialNorms {
        double frac_p, w2p, up;
    };
    std::vector<TrialNorms> tn;
    for (int t = 0; t < trials; ++t) {
        const GridFunction u = random_smooth_trial(op.grid, seed + static_cast<std::uint64_t>(t));
        if (linf_norm(u) == 0.0) continue;  // degenerate draw, skipped
        Eigen::VectorXd Au(op.size());
        for (int i = 0; i < op.size(); ++i)
            Au[i] = detail::row_dot(op.A_frac, i, u.values);
        const GridFunction Auf(op.grid, Au);
        tn.push_back({lp_norm(Auf, p), discrete_wkp_norm(u, 2, p).value,
                      lp_norm(u, p)});
    }

    std::vector<std::pair<double, double>> curve_pts;  // (eps, tau)
    bool finite = true;
    for (double eps : eps_list) {
        double tau = 0.0;
        for (const auto& n : tn)
            tau = std::max(tau, (n.frac_p - eps * n.w2p) / n.up);
        tau = std::max(tau, 0.0);
        finite = finite && std::isfinite(tau);
        curve_pts.emplace_back(eps, tau);
    }
    // tau must not decrease as eps decreases (the feasible set shrinks)
    auto sorted = curve_pts;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    bool monotone = true;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].second < sorted[i - 1].second * (1.0 - 1e-12)) monotone = false;

    auto curve = nlohmann::json::array();
    for (const auto& [eps, tau] : curve_pts)
        curve.push_back({{"eps", eps}, {"tau", tau}});
    rep.details["curve"] = curve;
    rep.details["p"] = p;
    rep.details["trials_used"] = static_cast<int>(tn.size());
    rep.add("tau(eps) finite for every eps", finite ? 1.0 : 0.0, 1.0, finite,
            "finiteness of the fitted constant");
    rep.add("tau nondecreasing as eps decreases", monotone ? 1.0 : 0.0, 1.0, monotone,
            "feasible set shrinks as eps decreases");
    return rep;
}

}  // namespace mixlap
