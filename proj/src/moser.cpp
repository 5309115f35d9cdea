#include "mixlap/moser.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mixlap/errors.hpp"
#include "mixlap/norms.hpp"

namespace mixlap {

double critical_exponent(int n, double s) {
    if (!(n > 2.0 * s)) throw SubcriticalDimension("n > 2s is required");
    return 2.0 * n / (n - 2.0 * s);
}

MoserSchedule beta_sequence(int n, double s, int M) {
    if (M < 1) throw ConfigError("M must be >= 1");
    MoserSchedule sched;
    sched.n = n;
    sched.s = s;
    sched.two_star = critical_exponent(n, s);
    sched.qbar = 2.0 / sched.two_star;
    sched.beta.resize(static_cast<std::size_t>(M));
    const double beta1 = 0.5 * (sched.two_star + 1.0);
    const double ratio = 0.5 * sched.two_star;  // 1/qbar
    // closed form keeps both identities at machine precision
    for (int m = 0; m < M; ++m)
        sched.beta[static_cast<std::size_t>(m)] =
            1.0 + std::pow(ratio, m) * (beta1 - 1.0);
    return sched;
}

double moser_product_bound(const MoserSchedule& sched, double fitted_C) {
    const double q = sched.qbar;
    const double beta1 = sched.beta.at(0);
    const double sum_geo = q / (1.0 - q);                       // sum q^k
    const double sum_kq = q / ((1.0 - q) * (1.0 - q)) + sum_geo;  // sum (k+1)q^k bound
    const double base = std::max(2.0 * fitted_C, 1.0);
    const double log_prod = sum_geo * std::log(base) + sum_kq * std::log(1.0 / q);
    return std::exp(log_prod / (2.0 * (beta1 - 1.0)));
}

PhiEval truncation_phi(double t, const TruncationPhi& phi) {
    const double beta = phi.beta, T = phi.T;
    if (!(beta > 1.0) || !(T > 0.0)) throw ConfigError("phi needs beta > 1, T > 0");
    PhiEval e;
    const double LT = beta * std::pow(T, beta - 1.0);
    if (t >= T) {
        e.value = LT * (t - T) + std::pow(T, beta);
        e.d1 = LT;
        e.d2 = 0.0;
    } else if (t <= -T) {
        e.value = -LT * (t + T) + std::pow(T, beta);
        e.d1 = -LT;
        e.d2 = 0.0;
    } else {
        const double at = std::abs(t);
        e.value = std::pow(at, beta);
        e.d1 = (t == 0.0) ? 0.0
                          : (t > 0.0 ? beta * std::pow(t, beta - 1.0)
                                     : -beta * std::pow(-t, beta - 1.0));
        e.d2 = (t == 0.0) ? 0.0 : beta * (beta - 1.0) * std::pow(at, beta - 2.0);
    }
    return e;
}

namespace {

double hn_of(const GridFunction& u) {
    return std::pow(u.grid->h(), u.grid->dim());
}

/// h^n * sum_i |u_i|^p in the log domain; returns log of the sum
/// (or -inf when u == 0). Guards the certificate against overflow.
double log_integral_pow(const GridFunction& u, double p) {
    double max_log = -std::numeric_limits<double>::infinity();
    const int N = static_cast<int>(u.values.size());
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        const double a = std::abs(u.values[i]);
        if (a == 0.0) continue;
        const double l = p * std::log(a);
        logs.push_back(l);
        max_log = std::max(max_log, l);
    }
    if (logs.empty()) return -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (double l : logs) acc += std::exp(l - max_log);
    return max_log + std::log(acc) + std::log(hn_of(u));
}

}  // namespace

AuditReport audit_main_estimate(const GridFunction& u, const MoserSchedule& sched,
                                double beta, double T, const GrowthEnvelope& env) {
    AuditReport rep;
    rep.audit = "main_estimate";
    const double ts = sched.two_star;
    const double hn = hn_of(u);
    const TruncationPhi phi{beta, T};

    double sum_phi_ts = 0.0, sum_u_2b1 = 0.0, sum_phi2_u = 0.0;
    for (int i = 0; i < u.values.size(); ++i) {
        const double ui = u.values[i];
        const double pv = truncation_phi(ui, phi).value;
        sum_phi_ts += std::pow(pv, ts);
        sum_u_2b1 += std::pow(std::abs(ui), 2.0 * beta - 1.0);
        sum_phi2_u += pv * pv * std::pow(std::abs(ui), ts - 2.0);
    }
    const double lhs = std::pow(hn * sum_phi_ts, 2.0 / ts);
    const double rhs = beta * (hn * sum_u_2b1 + hn * sum_phi2_u);
    const double fitted = (rhs > 0.0) ? lhs / rhs : 0.0;
    rep.fitted_constant = fitted;
    rep.add("main_estimate LHS <= C*RHS", lhs, fitted * rhs, true,
            "C fitted as the smallest validating constant (LHS/RHS)");
    rep.details["beta"] = beta;
    rep.details["T"] = T;
    rep.details["growth_c"] = env.c;
    rep.details["growth_q"] = env.q;
    rep.details["lhs"] = lhs;
    rep.details["rhs_over_C"] = rhs;
    return rep;
}

MoserCertificate compute_certificate(const GridFunction& u, int n, double s, int M) {
    if (M < 3) throw ConfigError("certificate needs M >= 3");
    const MoserSchedule sched = beta_sequence(n, s, M);
    const double ts = sched.two_star;
    MoserCertificate cert;
    cert.u_max = linf_norm(u);

    // Overflow gate as specified: |u|^{2*_s beta_M} must stay in range.
    if (cert.u_max > 1.0) {
        const double top_log = ts * sched.beta.back() * std::log(cert.u_max);
        if (top_log > std::log(std::numeric_limits<double>::max()))
            throw Overflow("|u|^{2*_s beta_M} exceeds double range; reduce M");
    }

    // A_m via log-domain accumulation.
    cert.A.resize(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) {
        const double bm = sched.beta[static_cast<std::size_t>(m)];
        const double logS = log_integral_pow(u, ts * bm);
        const double expo = 1.0 / (ts * (bm - 1.0));
        double log1pS;
        if (std::isinf(logS)) {
            log1pS = 0.0;  // u == 0: A_m = 1
        } else if (logS > 40.0) {
            log1pS = logS;
        } else {
            log1pS = std::log1p(std::exp(logS));
        }
        cert.A[static_cast<std::size_t>(m)] = std::exp(expo * log1pS);
    }

    // Fitted C: the phi-form sweep over beta_{1..3} with T > ||u||_inf,
    // joined with the per-step constants the A-chain itself requires.
    const double T = 2.0 * cert.u_max + 1.0;
    double fitted = 0.0;
    const GrowthEnvelope env{1.0, ts};
    for (int m = 0; m < std::min(M, 3); ++m) {
        const AuditReport r =
            audit_main_estimate(u, sched, sched.beta[static_cast<std::size_t>(m)], T, env);
        cert.beta_sweep_C.push_back(r.fitted_constant);
        fitted = std::max(fitted, r.fitted_constant);
    }
    for (int m = 0; m + 1 < M; ++m) {
        const double bm1 = sched.beta[static_cast<std::size_t>(m) + 1];
        const double ratio = cert.A[static_cast<std::size_t>(m) + 1] /
                             cert.A[static_cast<std::size_t>(m)];
        // smallest C with A_{m+1} <= (C beta_{m+1})^{1/(2(beta_{m+1}-1))} A_m
        const double need = std::pow(ratio, 2.0 * (bm1 - 1.0)) / bm1;
        fitted = std::max(fitted, need);
    }
    cert.fitted_C = fitted;
    cert.C0 = moser_product_bound(sched, fitted);
    cert.bound_value = cert.C0 * cert.A[0];
    cert.pass = cert.bound_value >= cert.u_max;

    // Quadrature slack: nodal volume vs true measure.
    {
        const Domain& dom = u.grid->domain();
        double vol = 0.0;
        switch (dom.kind()) {
            case DomainKind::Interval: vol = dom.b() - dom.a(); break;
            case DomainKind::Ball: vol = M_PI * dom.radius() * dom.radius(); break;
            case DomainKind::Rectangle:
                vol = (dom.hi()[0] - dom.lo()[0]) * (dom.hi()[1] - dom.lo()[1]);
                break;
        }
        const double hn = hn_of(u);
        cert.eps_h = std::abs(hn * u.grid->n_interior() - vol) / vol;
    }

    // R-selection diagnostic (3.8)/(3.9): smallest grid-realizable R with
    // (h^n sum_{|u|>R} |u|^{2*_s})^{(2*_s-2)/2*_s} <= 1/(2 C beta_1).
    {
        cert.R_threshold =
            (fitted > 0.0) ? 1.0 / (2.0 * fitted * sched.beta[0])
                           : std::numeric_limits<double>::infinity();
        std::vector<double> av(u.values.size());
        for (Eigen::Index i = 0; i < u.values.size(); ++i)
            av[static_cast<std::size_t>(i)] = std::abs(u.values[i]);
        std::sort(av.begin(), av.end());
        const double hn = hn_of(u);
        double R = cert.u_max;  // always feasible: empty tail
        // sweep candidates downward, keeping the smallest feasible R
        double tail = 0.0;
        for (std::size_t idx = av.size(); idx-- > 0;) {
            const double cand = av[idx];
            // tail over |u| > cand
            const double tail_term = std::pow(hn * tail, (ts - 2.0) / ts);
            if (tail_term <= cert.R_threshold) R = cand;
            tail += std::pow(av[idx], ts);
        }
        cert.R_selected = R;
    }
    return cert;
}

nlohmann::json MoserCertificate::to_json() const {
    nlohmann::json j;
    j["A"] = A;
    j["fitted_C"] = fitted_C;
    j["C0"] = C0;
    j["bound_value"] = bound_value;
    j["u_max"] = u_max;
    j["pass"] = pass;
    j["eps_h"] = eps_h;
    j["R_selected"] = R_selected;
    j["R_threshold"] = R_threshold;
    j["beta_sweep_C"] = beta_sweep_C;
    return j;
}

AuditReport convexity_inequality_audit(const OperatorAssembly& op,
                                       const GridFunction& u,
                                       const TruncationPhi& phi) {
    check_same_grid(u, op);
    AuditReport rep;
    rep.audit = "convexity_inequality";
    const int N = op.size();

    GridFunction pu(op.grid);
    Eigen::VectorXd dphi(N);
    for (int i = 0; i < N; ++i) {
        const PhiEval e = truncation_phi(u.values[i], phi);
        pu.values[i] = e.value;
        dphi[i] = e.d1;
    }
    const GridFunction Aphi = apply_mixed(op, pu, 0.0);
    const GridFunction Au = apply_mixed(op, u, 0.0);

    // Remove the local part: the inequality is stated for the kernel form.
    const Eigen::VectorXd frac_phi = Aphi.values - op.A_loc * pu.values;
    const Eigen::VectorXd frac_u = Au.values - op.A_loc * u.values;

    double worst_margin = std::numeric_limits<double>::infinity();
    int violations = 0;
    for (int i = 0; i < N; ++i) {
        const double lhs = frac_phi[i];
        const double rhs = dphi[i] * frac_u[i];
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        const double margin = (rhs - lhs) / scale;
        worst_margin = std::min(worst_margin, margin);
        if (margin < -1e-12) ++violations;
    }
    rep.add("nodal (A_frac phi(u))_i <= phi'(u_i)(A_frac u)_i", violations, 0,
            violations == 0, "exact inequality; 1e-12 relative roundoff floor");
    rep.details["worst_relative_margin"] = worst_margin;

    // Row-wise kernel-weight form on off-diagonal pairs W_ij = -A_frac(i,j) >= 0.
    int pair_violations = 0;
    for (int i = 0; i < N; ++i) {
        double lhs = 0.0, rhs = 0.0;
        for (int j = 0; j < N; ++j) {
            if (i == j) continue;
            const double w = -op.A_frac(i, j);
            if (w <= 0.0) continue;
            lhs += w * (pu.values[i] - pu.values[j]);
            rhs += w * (u.values[i] - u.values[j]);
        }
        rhs *= dphi[i];
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        if ((rhs - lhs) / scale < -1e-12) ++pair_violations;
    }
    rep.add("row-wise sum W_ij (phi(u_i)-phi(u_j)) <= phi'(u_i) sum W_ij (u_i-u_j)",
            pair_violations, 0, pair_violations == 0,
            "exact inequality; 1e-12 relative roundoff floor");
    return rep;
}

double embedding_constant_audit(const OperatorAssembly& op, int trials,
                                std::uint64_t seed) {
    if (trials < 10) throw ConfigError("need at least 10 trials");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double ts = critical_exponent(op.params.n, op.params.s);
    double fitted = 0.0;
    for (int t = 0; t < trials; ++t) {
        GridFunction u(op.grid);
        for (int i = 0; i < op.size(); ++i) u.values[i] = gauss(rng);
        const double num = std::pow(lp_norm(u, ts), 2.0);
        const double den = gagliardo_seminorm_sq(op, u);
        if (den > 0.0) fitted = std::max(fitted, num / den);
    }
    return fitted;
}

}  // namespace mixlap
