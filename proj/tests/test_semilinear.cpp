#include <doctest.h>

#include <cmath>

#include "mixlap/errors.hpp"
#include "mixlap/norms.hpp"
#include "mixlap/semilinear.hpp"

using namespace mixlap;

namespace {

OperatorAssembly make_op(double s = 0.25, double h = 1.0 / 128) {
    return assemble(make_grid(Domain::interval(0, 1), h), FractionalParams(1, s));
}

const std::vector<double> t_samples = {-1e4, -100, -10, -2, -1, -0.5, 0,
                                       0.5,  1,    2,   10, 100, 1e4};

}  // namespace

TEST_SUITE_BEGIN("semilinear_solver");

TEST_CASE("check_growth: sin passes with c=1, q=2") {
    const auto op = make_op();
    Nonlinearity nl = make_nonlinearity({{"name", "sin"}, {"amp", 1.0}});
    const auto rep = check_growth(nl, *op.grid, t_samples);
    CHECK(rep.pass);
    CHECK(rep.fitted_constant <= 1.0);
}

TEST_CASE("check_growth: cubic passes with q=4 (2*_s = 4 at n=1, s=0.25)") {
    const auto op = make_op();
    Nonlinearity nl = make_nonlinearity({{"name", "cubic"}, {"amp", 1.0}});
    CHECK(nl.growth_q == 4.0);
    const auto rep = check_growth(nl, *op.grid, t_samples);
    CHECK(rep.pass);
}

TEST_CASE("check_growth: e^t fails any polynomial envelope") {
    const auto op = make_op();
    Nonlinearity nl;
    nl.name = "exp";
    nl.g = [](Point, double t) { return std::exp(t); };
    nl.growth_c = 100.0;
    nl.growth_q = 6.0;
    std::vector<double> samples = t_samples;
    samples.push_back(300.0);
    const auto rep = check_growth(nl, *op.grid, samples);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("g == 0 gives the zero solution") {
    const auto op = make_op();
    auto [u, trace] = solve_semilinear(op, make_nonlinearity({{"name", "zero"}}),
                                       2.0, 1e-9, 50);
    CHECK(linf_norm(u) == 0.0);
    CHECK(trace.converged);
}

TEST_CASE("t-independent g converges to the direct solution") {
    const auto op = make_op();
    const Nonlinearity nl =
        make_nonlinearity({{"name", "const"}, {"value", 1.0}});
    const double tol = 1e-9;
    auto [u, trace] = solve_semilinear(op, nl, 5.0, tol, 200);
    GridFunction ones(op.grid);
    ones.values.setOnes();
    const auto ud = solve_direct(op, 0.0, ones);
    CHECK((u.values - ud.values).cwiseAbs().maxCoeff() < 10.0 * tol);
}

TEST_CASE("g = 1 - t: converged residual < 10*tol") {
    const auto op = make_op();
    const Nonlinearity nl =
        make_nonlinearity({{"name", "linear"}, {"a", 1.0}, {"b", -1.0}});
    const double tol = 1e-8;
    auto [u, trace] = solve_semilinear(op, nl, 2.0, tol, 200);
    CHECK(trace.converged);
    const GridFunction Au = apply_mixed(op, u, 0.0);
    double res = 0.0;
    for (int i = 0; i < op.size(); ++i)
        res = std::max(res, std::abs(Au.values[i] - (1.0 - u.values[i])));
    CHECK(res < 10.0 * tol);
}

TEST_CASE("Diverged fires on an expansive fixed-point map") {
    const auto op = make_op();
    Nonlinearity nl;
    nl.name = "expansive";
    nl.g = [](Point, double t) { return 1000.0 * (1.0 + t); };
    nl.growth_c = 2000.0;
    nl.growth_q = 2.0;
    CHECK_THROWS_AS(solve_semilinear(op, nl, 1.0, 1e-10, 500), Diverged);
}

TEST_CASE("MaxIterExceeded on a tight budget") {
    const auto op = make_op();
    const Nonlinearity nl =
        make_nonlinearity({{"name", "linear"}, {"a", 1.0}, {"b", -1.0}});
    CHECK_THROWS_AS(solve_semilinear(op, nl, 50.0, 1e-12, 2), MaxIterExceeded);
}

TEST_CASE("weak_residual: converged bound, zero case, one-node sensitivity") {
    const auto op = make_op();
    const Nonlinearity nl =
        make_nonlinearity({{"name", "linear"}, {"a", 1.0}, {"b", -1.0}});
    const double tol = 1e-8, lambda = 2.0;
    auto [u, trace] = solve_semilinear(op, nl, lambda, tol, 200);
    CHECK(weak_residual(op, u, nl) < 10.0 * tol * (1.0 + lambda));

    GridFunction zero(op.grid);
    CHECK(weak_residual(op, zero, make_nonlinearity({{"name", "zero"}})) == 0.0);

    // perturbing one node raises the defect at least by delta * (diag offset)
    const int mid = op.size() / 2;
    GridFunction up = u;
    const double delta = 1e-3;
    up.values[mid] += delta;
    const Eigen::MatrixXd Dloc(op.A_loc);
    const double diag = Dloc(mid, mid) + op.A_frac(mid, mid);
    const double before = weak_residual(op, u, nl);
    const double after = weak_residual(op, up, nl);
    CHECK(after >= delta * diag - before - delta /* g-Lipschitz slack */);
}

TEST_CASE("monotone case: g nonincreasing with g(.,0) >= 0 keeps iterates >= 0") {
    const auto op = make_op();
    const Nonlinearity nl =
        make_nonlinearity({{"name", "linear"}, {"a", 1.0}, {"b", -1.0}});
    auto [u, trace] = solve_semilinear(op, nl, 2.0, 1e-9, 200, true);
    REQUIRE(trace.iterates.size() >= 2);
    for (const auto& it : trace.iterates) CHECK(it.values.minCoeff() >= -1e-12);
}

TEST_SUITE_END();
