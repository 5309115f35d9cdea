#include "mixlap/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <iostream>

#include "mixlap/barrier.hpp"
#include "mixlap/errors.hpp"
#include "mixlap/matrix_market.hpp"
#include "mixlap/moser.hpp"
#include "mixlap/norms.hpp"
#include "mixlap/regularity.hpp"
#include "mixlap/report.hpp"
#include "mixlap/semilinear.hpp"
#include "mixlap/solver.hpp"

namespace mixlap {

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool wants(const ExperimentConfig& cfg, const std::string& audit) {
    for (const auto& a : cfg.audits)
        if (a == audit) return true;
    return false;
}

void write_csv(const std::string& dir, const RefinementStudy& study) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir + "/refinement.csv");
    out << "h,metric_name,value\n";
    char buf[64];
    for (const auto& lvl : study.levels) {
        for (const auto& [name, value] : lvl.metrics) {
            std::snprintf(buf, sizeof buf, "%.17g,", lvl.h);
            out << buf << name << ",";
            std::snprintf(buf, sizeof buf, "%.17g\n", value);
            out << buf;
        }
    }
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
    RunResult result;
    nlohmann::json& rep = result.report;
    rep["schema_version"] = 1;
    rep["config_echo"] = cfg.echo();
    rep["timestamp"] = utc_timestamp();
    rep["solves"] = nlohmann::json::array();
    rep["audits"] = nlohmann::json::object();

    const double h_fine = cfg.h_list.back();  // sorted descending at parse
    const GridPtr grid = make_grid(cfg.domain, h_fine);
    const FractionalParams params(cfg.domain.dim(), cfg.s);
    const OperatorAssembly op = assemble(grid, params);
    rep["grid"] = {{"N_int", grid->n_interior()}, {"h", h_fine}};

    const Nonlinearity nl = make_nonlinearity(cfg.nonlinearity);
    const bool rectangle_advisory = cfg.domain.kind() == DomainKind::Rectangle;

    // data part of g; the canonical linear right-hand side for the probes
    GridFunction f_data(grid);
    for (int i = 0; i < grid->n_interior(); ++i)
        f_data.values[i] = nl.g(grid->point(i), 0.0);
    GridFunction probe = f_data;
    if (linf_norm(probe) == 0.0) probe.values.setOnes();

    // lambda policy
    double lambda = 0.0;
    double lambda1_empirical = std::numeric_limits<double>::quiet_NaN();
    if (cfg.lambda.kind == LambdaPolicy::Kind::Fixed) {
        lambda = cfg.lambda.value;
    } else {
        lambda1_empirical = estimate_lambda_threshold(op, probe);
        lambda = cfg.lambda.factor * lambda1_empirical;
    }
    rep["lambda"] = lambda;
    if (std::isfinite(lambda1_empirical))
        rep["lambda1_empirical"] = lambda1_empirical;

    bool all_pass = true;
    const auto record = [&](const AuditReport& a, const std::string& key) {
        AuditReport copy = a;
        copy.advisory = copy.advisory || rectangle_advisory;
        rep["audits"][key] = copy.to_json();
        if (!copy.advisory && !copy.pass) all_pass = false;
    };
    const auto record_error = [&](const std::string& key, const Error& e) {
        rep["audits"][key] = {{"audit", key},
                              {"pass", false},
                              {"advisory", false},
                              {"error", std::string(e.what())}};
        all_pass = false;
    };

    // main solve: lambda-shifted Picard on the configured nonlinearity
    GridFunction u(grid);
    const double solve_tol = 1e-8;
    try {
        auto [sol, trace] = solve_semilinear(op, nl, lambda, solve_tol, 400);
        u = std::move(sol);
        rep["solves"].push_back(
            {{"name", "semilinear:" + nl.name},
             {"lambda", lambda},
             {"iterations", trace.step_inf.size()},
             {"converged", trace.converged},
             {"residual_inf",
              trace.residual_inf.empty() ? 0.0 : trace.residual_inf.back()},
             {"u_max", linf_norm(u)}});
    } catch (const Error& e) {
        rep["solves"].push_back({{"name", "semilinear:" + nl.name},
                                 {"lambda", lambda},
                                 {"converged", false},
                                 {"error", std::string(e.what())}});
        all_pass = false;
    }

    {
        const std::vector<double> t_samples = {-1000, -100, -10, -5, -2, -1, -0.5,
                                               0,     0.5,  1,   2,  5,  10, 100,
                                               1000};
        record(check_growth(nl, *grid, t_samples), "growth");
    }

    if (wants(cfg, "contraction")) {
        try {
            const double l1 = std::isfinite(lambda1_empirical)
                                  ? lambda1_empirical
                                  : estimate_lambda_threshold(op, probe);
            auto [uc, trace] = contraction_solve(op, 2.0 * l1, probe, 1e-8, 400);
            const GridFunction ud = solve_direct(op, 2.0 * l1, probe);
            AuditReport a;
            a.audit = "contraction";
            const double diff = linf_norm(GridFunction(
                grid, Eigen::VectorXd(uc.values - ud.values)));
            a.add("fixed point matches direct solve", diff, 10.0 * 1e-8,
                  diff < 10.0 * 1e-8, "10*tol from the scheme contract");
            double worst = 0.0;
            for (double r : trace.ratios) worst = std::max(worst, r);
            a.add("all ratios < 1", worst, 1.0, worst < 1.0, "strict");
            a.details["lambda1_empirical"] = l1;
            a.details["lambda"] = 2.0 * l1;
            a.details["trace"] = {{"lambda", trace.lambda},
                                  {"tol", trace.tol},
                                  {"converged", trace.converged},
                                  {"ratios", trace.ratios},
                                  {"step_norms",
                                   {{"inf", trace.step_inf},
                                    {"lp", trace.step_lp},
                                    {"w2p", trace.step_w2p}}}};
            record(a, "contraction");
        } catch (const Error& e) {
            record_error("contraction", e);
        }
    }

    if (wants(cfg, "moser")) {
        try {
            const MoserCertificate cert =
                compute_certificate(u, cfg.domain.dim(), cfg.s, 6);
            AuditReport a;
            a.audit = "moser_certificate";
            a.fitted_constant = cert.fitted_C;
            a.add("C0 * A1 >= ||u||_inf", cert.bound_value, cert.u_max, cert.pass,
                  "Theorem-level certificate; exact comparison");
            double mx = 0.0, mn = std::numeric_limits<double>::infinity();
            for (double c : cert.beta_sweep_C) {
                if (c > 0.0) {
                    mx = std::max(mx, c);
                    mn = std::min(mn, c);
                }
            }
            if (std::isfinite(mn) && mn > 0.0)
                a.add("fitted C spread over beta sweep < 10x", mx / mn, 10.0,
                      mx / mn < 10.0, "beta-independence probe");
            a.details["certificate"] = cert.to_json();
            record(a, "moser");
        } catch (const Error& e) {
            record_error("moser", e);
        }
    }

    if (wants(cfg, "barrier")) {
        try {
            const auto [x0, R] = choose_annulus(cfg.domain);
            const SupersolutionResult sup = verify_supersolution(grid, params, x0, R);
            AuditReport a = sup.report;
            const double lb = std::max(lambda, 1.0);
            const AuditReport transform = concave_transform_check(sup.barrier, op, lb);
            for (const auto& c : transform.checks)
                a.add(c.name, c.lhs, c.rhs, c.pass, c.tolerance_provenance);
            a.details["transform"] = transform.details;
            a.details["transform_lambda"] = lb;
            record(a, "barrier");
        } catch (const Error& e) {
            record_error("barrier", e);
        }
    }

    if (wants(cfg, "comparison")) {
        try {
            const double lc = lambda > 0.0 ? lambda : 10.0;
            record(comparison_bound(op, lc, f_data), "comparison");
        } catch (const Error& e) {
            record_error("comparison", e);
        }
    }

    if (wants(cfg, "interpolation")) {
        try {
            record(interpolation_audit(op, 2.0, {1.0, 0.1, 0.01}, 20,
                                       cfg.seed + 1000),
                   "interpolation");
        } catch (const Error& e) {
            record_error("interpolation", e);
        }
    }

    std::optional<RefinementStudy> study;
    if (wants(cfg, "stability")) {
        try {
            if (cfg.h_list.size() < 3)
                throw ConfigError("stability audit needs h_list with >= 3 levels");
            study = run_refinement_study(
                cfg.domain, cfg.s,
                [&](Point p) { return nl.g(p, 0.0); }, lambda, cfg.h_list,
                {2.0, 4.0});
            AuditReport a2 = stability_audit(*study, 2.0);
            const AuditReport a4 = stability_audit(*study, 4.0);
            for (const auto& c : a4.checks)
                a2.add(c.name + " (p=4)", c.lhs, c.rhs, c.pass, c.tolerance_provenance);
            a2.details["p4_levels"] = a4.details["levels"];
            record(a2, "stability");
        } catch (const Error& e) {
            record_error("stability", e);
        }
    }

    if (wants(cfg, "holder")) {
        try {
            const double alpha_min = 0.9, max_residual = 0.1;
            const HolderFit fit = holder_fit(u, 1);
            AuditReport a;
            a.audit = "holder";
            a.advisory = cfg.s > 0.5;
            a.add("order-1 alpha_hat >= alpha_min", fit.alpha_hat, alpha_min,
                  fit.alpha_hat >= alpha_min,
                  "desk-scale proxy threshold (configurable)");
            a.add("fit residual < max_residual", fit.fit_quality, max_residual,
                  fit.fit_quality < max_residual, "log-log LSQ residual");
            a.details["r"] = fit.r;
            a.details["omega"] = fit.omega;
            record(a, "holder");
        } catch (const Error& e) {
            record_error("holder", e);
        }
    }

    rep["pass"] = all_pass;

    // write report (always,也 on audit failure)
    {
        std::ofstream out(cfg.report_path);
        out << dump_json_17(rep);
    }
    if (!cfg.csv_dir.empty() && study) write_csv(cfg.csv_dir, *study);

    result.exit_code = all_pass ? 0 : 1;
    return result;
}

int run_config_file(const std::string& path) {
    try {
        const ExperimentConfig cfg = ExperimentConfig::from_file(path);
        return run_experiment(cfg).exit_code;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}

int export_matrix(const std::string& config_path, const std::string& which,
                  const std::string& out_path) {
    try {
        const ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
        const GridPtr grid = make_grid(cfg.domain, cfg.h_list.back());
        const FractionalParams params(cfg.domain.dim(), cfg.s);
        std::ofstream out(out_path);
        if (!out) throw ConfigError("cannot open output path: " + out_path);
        if (which == "loc") {
            write_matrix_market_sym(out, assemble_laplacian(*grid));
        } else if (which == "frac") {
            write_matrix_market_sym(out, assemble_fractional(*grid, params));
        } else {
            throw ConfigError("--which must be loc or frac");
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}

}  // namespace mixlap
