#include <doctest.h>

#include <cmath>
#include <random>

#include "mixlap/errors.hpp"
#include "mixlap/grid.hpp"

using namespace mixlap;

TEST_SUITE_BEGIN("domain_grid");

TEST_CASE("interval grid h=0.25: interior nodes {0.25, 0.5, 0.75}") {
    const Grid g = build_grid(Domain::interval(0, 1), 0.25);
    REQUIRE(g.n_interior() == 3);
    for (int i = 0; i < 3; ++i)
        CHECK(g.point(i)[0] == doctest::Approx(0.25 * (i + 1)).epsilon(1e-14));
    CHECK(g.boundary_distance(1) == doctest::Approx(0.5));
}

TEST_CASE("2D ball h=0.5: the 3x3 block at {-0.5,0,0.5}^2") {
    const Grid g = build_grid(Domain::ball({0, 0}, 1.0), 0.5);
    // independent enumeration: lattice points of [-1,1]^2 with |x| < 1
    int count = 0;
    for (int ix = 0; ix <= 4; ++ix)
        for (int iy = 0; iy <= 4; ++iy) {
            const double x = -1.0 + 0.5 * ix, y = -1.0 + 0.5 * iy;
            if (x * x + y * y < 1.0) ++count;
        }
    CHECK(count == 9);
    CHECK(g.n_interior() == 9);
    for (int i = 0; i < g.n_interior(); ++i) {
        CHECK(std::abs(g.point(i)[0]) <= 0.5);
        CHECK(std::abs(g.point(i)[1]) <= 0.5);
    }
}

TEST_CASE("BadSpacing and EmptyInterior") {
    CHECK_THROWS_AS(build_grid(Domain::interval(0, 1), -0.1), BadSpacing);
    CHECK_THROWS_AS(build_grid(Domain::interval(0, 1), 0.3), BadSpacing);
    CHECK_THROWS_AS(build_grid(Domain::interval(0, 1), 0.5), BadSpacing);
    // degenerate-thin rectangle: no lattice row falls inside
    CHECK_THROWS_AS(build_grid(Domain::rectangle({0, 0}, {1, 1e-9}), 0.2),
                    EmptyInterior);
}

TEST_CASE("boundary distances are exact closed forms") {
    const Grid gi = build_grid(Domain::interval(0, 1), 0.25);
    CHECK(gi.boundary_distance(0) == doctest::Approx(0.25));

    const Grid gb = build_grid(Domain::ball({0, 0}, 1.0), 0.25);
    for (int i = 0; i < gb.n_interior(); ++i) {
        const Point p = gb.point(i);
        if (std::abs(p[0] - 0.5) < 1e-14 && std::abs(p[1]) < 1e-14)
            CHECK(gb.boundary_distance(i) == doctest::Approx(0.5));
    }

    const Grid gr = build_grid(Domain::rectangle({0, 0}, {1, 1}), 0.25);
    for (int i = 0; i < gr.n_interior(); ++i) {
        const Point p = gr.point(i);
        if (std::abs(p[0] - 0.25) < 1e-14 && std::abs(p[1] - 0.5) < 1e-14)
            CHECK(gr.boundary_distance(i) == doctest::Approx(0.25));
    }
}

TEST_CASE("boundary_distance rejects non-interior indices") {
    const Grid g = build_grid(Domain::interval(0, 1), 0.25);
    CHECK_THROWS_AS(g.boundary_distance(-1), NotInterior);
    CHECK_THROWS_AS(g.boundary_distance(99), NotInterior);
}

TEST_CASE("zero extension: non-interior lattice values are exactly 0") {
    const GridPtr g = make_grid(Domain::ball({0, 0}, 1.0), 0.25);
    GridFunction u(g);
    u.values.setOnes();
    const auto shape = g->lattice_shape();
    int exterior_seen = 0;
    for (int iy = 0; iy < shape[1]; ++iy)
        for (int ix = 0; ix < shape[0]; ++ix)
            if (g->interior_index(ix, iy) < 0) {
                CHECK(u.at_lattice(ix, iy) == 0.0);
                ++exterior_seen;
            }
    CHECK(exterior_seen > 0);
    CHECK(u.at_lattice(-5, 0) == 0.0);  // off the lattice box entirely
}

TEST_CASE("refinement nesting for interval and rectangle") {
    for (double h : {0.25, 0.125}) {
        const Grid coarse = build_grid(Domain::interval(0, 1), h);
        const Grid fine = build_grid(Domain::interval(0, 1), h / 2);
        for (int i = 0; i < coarse.n_interior(); ++i) {
            const auto [ix, iy] = coarse.lattice_coords(i);
            CHECK(fine.interior_index(2 * ix, 2 * iy) >= 0);
        }
    }
    const Grid rc = build_grid(Domain::rectangle({0, 0}, {1, 2}), 0.25);
    const Grid rf = build_grid(Domain::rectangle({0, 0}, {1, 2}), 0.125);
    for (int i = 0; i < rc.n_interior(); ++i) {
        const auto [ix, iy] = rc.lattice_coords(i);
        CHECK(rf.interior_index(2 * ix, 2 * iy) >= 0);
    }
}

TEST_CASE("property: boundary_distance <= |x - y| for boundary samples") {
    std::mt19937_64 rng(12345);
    const std::vector<Domain> domains = {Domain::interval(0, 1),
                                         Domain::ball({0.5, -0.25}, 0.8),
                                         Domain::rectangle({0, 0}, {2, 1})};
    for (const Domain& dom : domains) {
        const Grid g = build_grid(dom, dom.diameter() / 17.0);
        const auto samples = dom.boundary_samples(64);
        std::uniform_int_distribution<int> pick(0, g.n_interior() - 1);
        for (int trial = 0; trial < 50; ++trial) {
            const int i = pick(rng);
            const Point x = g.point(i);
            const double bd = g.boundary_distance(i);
            for (const Point& y : samples)
                CHECK(bd <= dist(x, y, dom.dim()) + 1e-12);
        }
    }
}

TEST_CASE("annulus hint verification") {
    Domain d = Domain::interval(0, 1);
    CHECK_NOTHROW(d.set_annulus_hint({{-0.75, 0.0}, 2.45}));
    Domain d2 = Domain::interval(0, 1);
    CHECK_THROWS_AS(d2.set_annulus_hint({{-0.1, 0.0}, 1.0}), AnnulusFailure);
}

TEST_SUITE_END();
