#include <cmath>

#include "doctest.h"
#include "infl/catalog.hpp"
#include "infl/lipschitz.hpp"
#include "infl/mv_solver.hpp"

using namespace infl;

namespace {

Grid line_grid(double h) { return Grid(Box{{0.0}, {1.0}}, h, Shape::rectangle()); }

MVConfig plain_config(double eps, double tol = 1e-10) {
    MVConfig c;
    c.eps = eps;
    c.tolerance = tol;
    return c;
}

}  // namespace

TEST_CASE("linear field is a fixed point of the plain sweep") {
    Grid g = line_grid(0.25);
    ScalarField u = sample_field(g, [](const Vec& x) { return x[0]; });
    ScalarField v = mv_sweep(u, g, plain_config(0.25));
    CHECK(sup_distance(u, v) <= 1e-15);
    ScalarField c(g, 3.5);
    CHECK(sup_distance(mv_sweep(c, g, plain_config(0.25)), c) <= 1e-15);
}

TEST_CASE("hand-applied sweep on the 5-node line") {
    Grid g = line_grid(0.25);
    ScalarField u(g, 0.0);
    u[g.locate({1.0})] = 1.0;
    ScalarField v = mv_sweep(u, g, plain_config(0.25));
    CHECK(v[g.locate({0.25})] == doctest::Approx(0.0));
    CHECK(v[g.locate({0.5})] == doctest::Approx(0.0));
    CHECK(v[g.locate({0.75})] == doctest::Approx(0.5));
    // boundary passes through
    CHECK(v[g.locate({0.0})] == doctest::Approx(0.0));
    CHECK(v[g.locate({1.0})] == doctest::Approx(1.0));
}

TEST_CASE("1D Dirichlet solve returns the linear interpolant") {
    Grid g = line_grid(1.0 / 32.0);
    auto bd = boundary_trace(g, [](const Vec& x) { return x[0]; });
    auto [u, rep] = solve_mv(g, bd, plain_config(1.0 / 32.0));
    CHECK(!rep.truncated);
    double worst = 0.0;
    for (int n = 0; n < g.num_nodes(); ++n)
        worst = std::max(worst, std::abs(u[n] - g.coords(n)[0]));
    CHECK(worst <= 1e-6);
    // maximum principle
    CHECK(u.min() >= 0.0 - 1e-12);
    CHECK(u.max() <= 1.0 + 1e-12);
}

TEST_CASE("mw_upper initialization descends monotonically; both envelopes meet") {
    Grid g(Box{{0.0, 0.0}, {1.0, 1.0}}, 1.0 / 16.0, Shape::rectangle());
    auto cone = cone_entry({-0.5, -0.5}, 0.0, 1.0);
    auto bd = boundary_trace(g, [&](const Vec& x) { return eval_catalog(cone, x); });

    MVConfig up = plain_config(2.0 / 16.0, 1e-12);
    up.init = MVConfig::Init::mw_upper;
    auto [uu, ru] = solve_mv(g, bd, up);
    CHECK(ru.monotone);

    MVConfig lo = up;
    lo.init = MVConfig::Init::mw_lower;
    auto [ul, rl] = solve_mv(g, bd, lo);
    CHECK(rl.monotone);

    CHECK(sup_distance(uu, ul) <= 1e-8);  // discrete Perron coincidence
}

TEST_CASE("residual field identities") {
    Grid g = line_grid(1.0 / 32.0);
    auto bd = boundary_trace(g, [](const Vec& x) { return x[0]; });
    auto [u, rep] = solve_mv(g, bd, plain_config(1.0 / 32.0));
    ScalarField r = residual_field(u, g, 1.0 / 32.0);
    for (int n : g.interior_nodes()) CHECK(std::abs(r[n]) <= 1e-9);

    // cone away from the apex: symmetric stencil, zero residual
    ScalarField cone = sample_field(g, [](const Vec& x) { return std::abs(x[0] + 0.5); });
    ScalarField rc = residual_field(cone, g, 1.0 / 32.0);
    for (int n : g.interior_nodes()) CHECK(std::abs(rc[n]) <= 1e-15);

    // u = x^2/2 at eps = h: r = -h^2/2
    double h = 1.0 / 32.0;
    ScalarField q = sample_field(g, [](const Vec& x) { return 0.5 * x[0] * x[0]; });
    ScalarField rq = residual_field(q, g, h);
    for (int n : g.interior_nodes()) CHECK(rq[n] == doctest::Approx(-h * h / 2.0));
}

TEST_CASE("scheme variant corrections") {
    Grid g = line_grid(0.25);
    ScalarField zero(g, 0.0);
    double eps = 0.25;

    MVConfig up = plain_config(eps);
    up.variant = SchemeVariant::upper(2.0);
    ScalarField vu = mv_sweep(zero, g, up);
    for (int n : g.interior_nodes()) CHECK(vu[n] == doctest::Approx(eps * eps));

    MVConfig lo = plain_config(eps);
    lo.variant = SchemeVariant::lower(2.0);
    ScalarField vl = mv_sweep(zero, g, lo);
    for (int n : g.interior_nodes()) CHECK(vl[n] == doctest::Approx(-eps * eps));

    MVConfig po = plain_config(eps);
    po.variant = SchemeVariant::poisson([](const Vec&) { return 4.0; });
    ScalarField vp = mv_sweep(zero, g, po);
    for (int n : g.interior_nodes()) CHECK(vp[n] == doctest::Approx(-2.0 * eps * eps));
}

TEST_CASE("sandwich on the zero-boundary line") {
    Grid g = line_grid(1.0 / 32.0);
    auto bd = boundary_trace(g, [](const Vec&) { return 0.0; });
    auto r = solve_sandwich(g, bd, 1.0 / 32.0, 1.0, 1e-10);
    for (int n : g.interior_nodes()) {
        CHECK(r.upper[n] > 0.0);
        CHECK(r.lower[n] < 0.0);
        CHECK(std::abs(r.plain[n]) <= 1e-9);
    }
    // gap grows with delta
    auto r2 = solve_sandwich(g, bd, 1.0 / 32.0, 2.0, 1e-10);
    CHECK(r2.gap >= r.gap);
    auto r05 = solve_sandwich(g, bd, 1.0 / 32.0, 0.5, 1e-10);
    CHECK(r05.gap <= r.gap);
    CHECK(r.continuum_reference == doctest::Approx(1.0));  // delta * diam([0,1])
}

TEST_CASE("configuration validation") {
    Grid g = line_grid(0.25);
    MVConfig c = plain_config(0.1);  // eps < h
    auto bd = boundary_trace(g, [](const Vec& x) { return x[0]; });
    CHECK_THROWS_AS(solve_mv(g, bd, c), std::invalid_argument);
    CHECK_THROWS_AS(SchemeVariant::upper(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(SchemeVariant::lower(0.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_sandwich(g, bd, 0.25, -0.5), std::invalid_argument);
}

TEST_CASE("constrained solve only moves free nodes") {
    Grid g = line_grid(1.0 / 16.0);
    ScalarField u = sample_field(g, [](const Vec& x) { return x[0] * x[0]; });
    std::vector<char> free_mask(g.num_nodes(), 0);
    // free the middle third
    for (int n : g.interior_nodes())
        if (g.coords(n)[0] > 0.3 && g.coords(n)[0] < 0.7) free_mask[n] = 1;
    ScalarField v = solve_constrained(u, g, free_mask, plain_config(1.0 / 16.0));
    for (int n = 0; n < g.num_nodes(); ++n)
        if (!free_mask[n]) CHECK(v[n] == u[n]);
    // frozen values act as boundary data: the free stretch relaxes to the
    // linear interpolant through its frozen neighbors at x=0.25 and x=0.75
    for (int n : g.interior_nodes())
        if (free_mask[n]) {
            double x = g.coords(n)[0];
            double linear = 0.0625 + (x - 0.25);  // slope (0.5625-0.0625)/0.5 = 1
            CHECK(std::abs(v[n] - linear) <= 1e-8);
        }
}
