#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "infl/grid.hpp"

using namespace infl;

TEST_CASE("1D segment [0,1] at h=0.25") {
    Grid g(Box{{0.0}, {1.0}}, 0.25, Shape::rectangle());
    CHECK(g.dim() == 1);
    CHECK(g.num_nodes() == 5);
    CHECK(g.num_boundary() == 2);
    CHECK(g.num_interior() == 3);
    std::vector<double> interior;
    for (int n : g.interior_nodes()) interior.push_back(g.coords(n)[0]);
    std::sort(interior.begin(), interior.end());
    CHECK(interior[0] == doctest::Approx(0.25));
    CHECK(interior[1] == doctest::Approx(0.5));
    CHECK(interior[2] == doctest::Approx(0.75));
    std::vector<double> boundary;
    for (int n : g.boundary_nodes()) boundary.push_back(g.coords(n)[0]);
    std::sort(boundary.begin(), boundary.end());
    CHECK(boundary[0] == doctest::Approx(0.0));
    CHECK(boundary[1] == doctest::Approx(1.0));
}

TEST_CASE("unit square at h=0.5") {
    Grid g(Box{{0.0, 0.0}, {1.0, 1.0}}, 0.5, Shape::rectangle());
    CHECK(g.num_nodes() == 9);
    CHECK(g.num_boundary() == 8);
    CHECK(g.num_interior() == 1);
    Vec c = g.coords(g.interior_nodes()[0]);
    CHECK(c[0] == doctest::Approx(0.5));
    CHECK(c[1] == doctest::Approx(0.5));
}

TEST_CASE("annulus interior nodes satisfy 1 < |x| < 2") {
    Grid g(Box{{-2.0, -2.0}, {2.0, 2.0}}, 0.1, Shape::annulus(1.0, 2.0));
    REQUIRE(g.num_interior() > 0);
    for (int n : g.interior_nodes()) {
        double r = norm(g.coords(n));
        CHECK(r > 1.0);
        CHECK(r < 2.0);
    }
}

TEST_CASE("ball stencil sizes on a coarse free lattice") {
    Grid g(Box{{0.0, 0.0}, {10.0, 10.0}}, 1.0, Shape::rectangle());
    int center = g.locate({5.0, 5.0});
    REQUIRE(center >= 0);
    CHECK(ball_stencil(g, center, 1.5).size() == 9);
    CHECK(ball_stencil(g, center, 1.0).size() == 5);
    // contains the center itself
    auto st = ball_stencil(g, center, 1.0);
    CHECK(std::find(st.begin(), st.end(), center) != st.end());
}

TEST_CASE("stencil near the boundary is clipped to domain nodes") {
    Grid g(Box{{0.0, 0.0}, {10.0, 10.0}}, 1.0, Shape::rectangle());
    int node = g.locate({1.0, 5.0});
    REQUIRE(node >= 0);
    auto st = ball_stencil(g, node, 2.0);
    // full lattice ball |offset| <= 2 has 13 points; one falls outside the box
    CHECK(st.size() == 12);
    for (int y : st) CHECK(dist(g.coords(y), g.coords(node)) <= 2.0 + 1e-12);
}

TEST_CASE("stencil errors") {
    Grid g(Box{{0.0, 0.0}, {1.0, 1.0}}, 0.25, Shape::rectangle());
    int center = g.locate({0.5, 0.5});
    CHECK_THROWS(ball_stencil(g, center, 0.1));                 // eps < h
    CHECK_THROWS(ball_stencil(g, g.boundary_nodes()[0], 0.5));  // boundary center
}

TEST_CASE("stencil nesting and symmetry") {
    Grid g(Box{{0.0, 0.0}, {1.0, 1.0}}, 0.125, Shape::rectangle());
    for (int a : g.interior_nodes()) {
        auto s1 = ball_stencil(g, a, 0.125);
        auto s2 = ball_stencil(g, a, 0.3);
        CHECK(std::includes(s2.begin(), s2.end(), s1.begin(), s1.end()));
        for (int b : s2) {
            if (!g.is_interior(b)) continue;
            auto sb = ball_stencil(g, b, 0.3);
            CHECK(std::find(sb.begin(), sb.end(), a) != sb.end());
        }
    }
}

TEST_CASE("boundary traces and Lipschitz constants") {
    Grid g(Box{{0.0, 0.0}, {1.0, 1.0}}, 0.5, Shape::rectangle());
    auto lin = boundary_trace(g, [](const Vec& x) { return x[0]; });
    CHECK(lin.lipschitz == doctest::Approx(1.0));
    auto cst = boundary_trace(g, [](const Vec&) { return 3.0; });
    CHECK(cst.lipschitz == doctest::Approx(0.0));
    // cone apex collinear with the (0, 0.5)-(1, 0.5) boundary pair: L = |b|
    Vec apex{-1.0, 0.5};
    auto cone = boundary_trace(g, [&](const Vec& x) { return 2.0 * dist(x, apex); });
    CHECK(cone.lipschitz == doctest::Approx(2.0));
}

TEST_CASE("non-finite boundary value is rejected with the node named") {
    Grid g(Box{{0.0}, {1.0}}, 0.25, Shape::rectangle());
    CHECK_THROWS_WITH_AS(
        boundary_trace(g,
                       [](const Vec& x) {
                           return x[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
                       }),
        doctest::Contains("node"), std::runtime_error);
}

TEST_CASE("empty interior names shape and spacing") {
    bool threw = false;
    try {
        Grid g(Box{{-2.0, -2.0}, {2.0, 2.0}}, 0.5, Shape::annulus(1.0, 1.05));
    } catch (const std::exception& e) {
        threw = true;
        std::string msg = e.what();
        CHECK(msg.find("annulus") != std::string::npos);
        CHECK(msg.find("0.5") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("rebuilding a grid reproduces the node ordering") {
    Grid a(Box{{-2.0, -2.0}, {2.0, 2.0}}, 0.25, Shape::annulus(1.0, 2.0));
    Grid b(Box{{-2.0, -2.0}, {2.0, 2.0}}, 0.25, Shape::annulus(1.0, 2.0));
    REQUIRE(a.num_nodes() == b.num_nodes());
    for (int n = 0; n < a.num_nodes(); ++n) {
        CHECK(a.coords(n) == b.coords(n));
        CHECK((a.node_class(n) == b.node_class(n)));
    }
}

TEST_CASE("L-shape and mask shapes classify nodes") {
    Grid l(Box{{0.0, 0.0}, {1.0, 1.0}}, 0.125, Shape::lshape());
    CHECK(l.num_interior() > 0);
    for (int n : l.interior_nodes()) {
        Vec x = l.coords(n);
        CHECK(!(x[0] > 0.5 && x[1] > 0.5));  // upper-right quadrant removed
    }
    Grid m(Box{{0.0, 0.0}, {4.0, 2.0}}, 1.0,
           Shape::from_mask_rows({"11111", "11111", "11111"}));
    CHECK(m.num_interior() == 3);
}

TEST_CASE("scalar field basics and sampling") {
    Grid g(Box{{0.0}, {1.0}}, 0.25, Shape::rectangle());
    ScalarField u = sample_field(g, [](const Vec& x) { return x[0] * 2.0; });
    CHECK(u.min() == doctest::Approx(0.0));
    CHECK(u.max() == doctest::Approx(2.0));
    ScalarField v(g, 1.0);
    CHECK(sup_distance(u, v) == doctest::Approx(1.0));
}
