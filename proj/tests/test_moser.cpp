#include <doctest.h>

#include <cmath>
#include <random>

#include "mixlap/errors.hpp"
#include "mixlap/moser.hpp"
#include "mixlap/norms.hpp"
#include "mixlap/semilinear.hpp"
#include "oracles.hpp"

using namespace mixlap;

TEST_SUITE_BEGIN("moser_audit");

TEST_CASE("critical exponent values and the subcritical guard") {
    CHECK(critical_exponent(1, 0.25) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(critical_exponent(2, 0.5) == doctest::Approx(4.0).epsilon(1e-15));
    // 2n/(n-2s) with n=3 is out of scope for grids but the formula is total
    CHECK_THROWS_AS(critical_exponent(1, 0.5), SubcriticalDimension);
    CHECK_THROWS_AS(critical_exponent(1, 0.7), SubcriticalDimension);
}

TEST_CASE("beta sequence: [2.5, 4, 7] at (n=1, s=0.25)") {
    const MoserSchedule sched = beta_sequence(1, 0.25, 3);
    CHECK(sched.two_star == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(sched.beta[0] == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(sched.beta[1] == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(sched.beta[2] == doctest::Approx(7.0).epsilon(1e-15));
    // recursion check: 2*beta_2 + 2*_s - 2 = 2*_s * beta_1  (8 + 2 = 10)
    CHECK(2.0 * sched.beta[1] + sched.two_star - 2.0 ==
          doctest::Approx(sched.two_star * sched.beta[0]).epsilon(1e-15));
    // growth bound: beta_2 = 4 <= 2 (1/qbar)^2 = 8
    CHECK(sched.beta[1] <= 2.0 * std::pow(1.0 / sched.qbar, 2.0));
}

TEST_CASE("schedule identities hold to <= 4 ulps for random (n, s), M = 10") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + (trial % 2);
        double s = uni(rng) * 0.5 * n * 0.98 + 0.005;  // n > 2s
        s = std::min(s, 0.99);
        const MoserSchedule sched = beta_sequence(n, s, 10);
        const double ts = sched.two_star;
        for (int m = 0; m + 1 < 10; ++m) {
            const double lhs = 2.0 * sched.beta[m + 1] + ts - 2.0;
            const double rhs = ts * sched.beta[m];
            CHECK(oracle::ulp_distance(lhs, rhs) <= 4);
            const double closed =
                1.0 + std::pow(ts / 2.0, m + 1) * (sched.beta[0] - 1.0);
            CHECK(oracle::ulp_distance(sched.beta[m + 1], closed) <= 4);
            const double bound = 2.0 * std::pow(1.0 / sched.qbar, m + 2);
            CHECK(sched.beta[m + 1] <= bound * (1.0 + 4e-16));
        }
        CHECK(sched.qbar < 1.0);
        for (int m = 0; m + 1 < 10; ++m) CHECK(sched.beta[m + 1] > sched.beta[m]);
    }
}

TEST_CASE("truncation phi: piecewise values and derivative battery") {
    // beta = 2, T = 1: phi(1) = 1, phi(2) = 3, phi'(2) = 2
    const TruncationPhi phi{2.0, 1.0};
    CHECK(truncation_phi(0.0, phi).value == 0.0);
    CHECK(truncation_phi(0.0, phi).d1 == 0.0);
    CHECK(truncation_phi(1.0, phi).value == doctest::Approx(1.0));
    CHECK(truncation_phi(2.0, phi).value == doctest::Approx(3.0));
    CHECK(truncation_phi(2.0, phi).d1 == doctest::Approx(2.0));
    // second derivative reported 0 outside (-T,T)\{0}
    CHECK(truncation_phi(0.0, phi).d2 == 0.0);
    CHECK(truncation_phi(5.0, phi).d2 == 0.0);
    CHECK(truncation_phi(0.5, phi).d2 == doctest::Approx(2.0));
}

TEST_CASE("phi battery: 1e4 random samples, zero violations") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double rel = 1.0 + 1e-12;
    for (int k = 0; k < 10000; ++k) {
        const double beta = 1.0 + 7.0 * uni(rng);
        const double T = std::pow(10.0, 3.0 * uni(rng) - 1.0);
        const double t = (uni(rng) - 0.5) * 2.0 * std::pow(10.0, 3.0 * uni(rng) - 1.0);
        const TruncationPhi phi{beta, T};
        const PhiEval e = truncation_phi(t, phi);
        const double at = std::abs(t);
        CHECK(e.value <= std::pow(at, beta) * rel + 1e-300);
        CHECK(std::abs(e.d1) <= beta * std::pow(at, beta - 1.0) * rel + 1e-300);
        CHECK(std::abs(t * e.d1) <= beta * e.value * rel + 1e-300);
        // Lipschitz bound |phi(a)-phi(b)| <= beta T^{beta-1} |a-b|
        const double t2 = (uni(rng) - 0.5) * 2.0 * std::pow(10.0, 3.0 * uni(rng) - 1.0);
        const PhiEval e2 = truncation_phi(t2, phi);
        const double L = beta * std::pow(T, beta - 1.0);
        CHECK(std::abs(e.value - e2.value) <= L * std::abs(t - t2) * rel + 1e-300);
        // midpoint convexity
        const PhiEval em = truncation_phi(0.5 * (t + t2), phi);
        CHECK(em.value <= 0.5 * (e.value + e2.value) * rel + 1e-300);
    }
}

namespace {

GridFunction semilinear_reference_solution(const OperatorAssembly& op) {
    const Nonlinearity nl =
        make_nonlinearity({{"name", "linear"}, {"a", 1.0}, {"b", -1.0}});
    return solve_semilinear(op, nl, 2.0, 1e-9, 200).first;
}

}  // namespace

TEST_CASE("main estimate: trivial at zero, stable under refinement, beta sweep") {
    const MoserSchedule sched = beta_sequence(1, 0.25, 3);
    const GrowthEnvelope env{1.0, 4.0};

    const auto op1 = assemble(make_grid(Domain::interval(0, 1), 1.0 / 128),
                              FractionalParams(1, 0.25));
    GridFunction zero(op1.grid);
    const auto rz = audit_main_estimate(zero, sched, sched.beta[0], 10.0, env);
    CHECK(rz.fitted_constant == 0.0);

    const GridFunction u1 = semilinear_reference_solution(op1);
    const auto op2 = assemble(make_grid(Domain::interval(0, 1), 1.0 / 256),
                              FractionalParams(1, 0.25));
    const GridFunction u2 = semilinear_reference_solution(op2);
    const double c1 =
        audit_main_estimate(u1, sched, sched.beta[0], 10.0, env).fitted_constant;
    const double c2 =
        audit_main_estimate(u2, sched, sched.beta[0], 10.0, env).fitted_constant;
    CHECK(std::abs(c1 - c2) / c1 < 0.2);  // stable within 20% under h -> h/2

    double cmin = 1e300, cmax = 0.0;
    for (double b : sched.beta) {
        const double c =
            audit_main_estimate(u1, sched, b, 10.0, env).fitted_constant;
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
    }
    CHECK(cmax / cmin < 10.0);  // within one order of magnitude
}

TEST_CASE("certificate: zero function gives A_m = 1 and bound C0 >= 0") {
    const auto grid = make_grid(Domain::interval(0, 1), 1.0 / 64);
    GridFunction zero(grid);
    const MoserCertificate cert = compute_certificate(zero, 1, 0.25, 4);
    for (double a : cert.A) CHECK(a == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cert.bound_value >= 0.0);
    CHECK(cert.pass);
}

TEST_CASE("certificate: indicator-like data, A_m <= 2^{1/(2*_s(beta_m-1))} -> 1") {
    const auto grid = make_grid(Domain::interval(0, 1), 1.0 / 64);
    GridFunction u(grid);
    u.values.setOnes();  // ||u||_inf = 1, h^n N_int ~ |Omega| = 1
    const MoserCertificate cert = compute_certificate(u, 1, 0.25, 6);
    const MoserSchedule sched = beta_sequence(1, 0.25, 6);
    for (std::size_t m = 0; m < cert.A.size(); ++m) {
        const double cap =
            std::pow(2.0, 1.0 / (sched.two_star * (sched.beta[m] - 1.0)));
        CHECK(cert.A[m] <= cap * (1.0 + 1e-12));
        if (m > 0) CHECK(cert.A[m] <= cert.A[m - 1] * (1.0 + 1e-12));
    }
    CHECK(cert.A.back() <= std::max(1.0, linf_norm(u)) * 1.01);
    CHECK(cert.pass);
}

TEST_CASE("certificate passes on a solver-produced solution") {
    const auto op = assemble(make_grid(Domain::interval(0, 1), 1.0 / 256),
                             FractionalParams(1, 0.25));
    const GridFunction u = semilinear_reference_solution(op);
    const MoserCertificate cert = compute_certificate(u, 1, 0.25, 6);
    CHECK(cert.pass);
    CHECK(cert.bound_value >= cert.u_max);
    // per-step A-ratio form of (3.12)
    const MoserSchedule sched = beta_sequence(1, 0.25, 6);
    for (std::size_t m = 0; m + 1 < cert.A.size(); ++m) {
        const double cm1 = cert.fitted_C * sched.beta[m + 1];
        const double cap =
            std::pow(cm1, 1.0 / (2.0 * (sched.beta[m + 1] - 1.0)));
        CHECK(cert.A[m + 1] <= cap * cert.A[m] * (1.0 + 1e-10));
    }
    CHECK(cert.R_selected <= cert.u_max);
    CHECK(cert.eps_h < 0.1);
}

TEST_CASE("certificate Overflow guard") {
    const auto grid = make_grid(Domain::interval(0, 1), 1.0 / 64);
    GridFunction u(grid);
    u.values.setConstant(1e10);
    CHECK_THROWS_AS(compute_certificate(u, 1, 0.25, 8), Overflow);
}

TEST_CASE("discrete convexity inequality (4.2) on solver output") {
    const auto op = assemble(make_grid(Domain::interval(0, 1), 1.0 / 128),
                             FractionalParams(1, 0.25));
    const GridFunction u = semilinear_reference_solution(op);
    const auto rep = convexity_inequality_audit(op, u, TruncationPhi{2.5, 10.0});
    CHECK(rep.pass);
    // also on sign-changing data
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss;
    GridFunction w(op.grid);
    for (int i = 0; i < op.size(); ++i) w.values[i] = gauss(rng);
    CHECK(convexity_inequality_audit(op, w, TruncationPhi{3.0, 2.0}).pass);
}

TEST_CASE("embedding constant audit: positive, scale-invariant, refinement-stable") {
    const auto op = assemble(make_grid(Domain::interval(0, 1), 1.0 / 64),
                             FractionalParams(1, 0.25));
    const double S = embedding_constant_audit(op, 12, 42);
    CHECK(S > 0.0);

    // scale invariance of the ratio on a fixed function
    const auto u = sample(op.grid, [](Point p) { return std::sin(M_PI * p[0]); });
    GridFunction u3(op.grid, Eigen::VectorXd(3.0 * u.values));
    const double ts = critical_exponent(1, 0.25);
    const double r1 =
        std::pow(lp_norm(u, ts), 2.0) / gagliardo_seminorm_sq(op, u);
    const double r3 =
        std::pow(lp_norm(u3, ts), 2.0) / gagliardo_seminorm_sq(op, u3);
    CHECK(r1 == doctest::Approx(r3).epsilon(1e-12));

    // fitted S on a fixed smooth u stays within +-50% under refinement
    const auto op2 = assemble(make_grid(Domain::interval(0, 1), 1.0 / 128),
                              FractionalParams(1, 0.25));
    const auto u2 = sample(op2.grid, [](Point p) { return std::sin(M_PI * p[0]); });
    const double r2 =
        std::pow(lp_norm(u2, ts), 2.0) / gagliardo_seminorm_sq(op2, u2);
    CHECK(std::abs(r2 - r1) / r1 < 0.5);
}

TEST_SUITE_END();
