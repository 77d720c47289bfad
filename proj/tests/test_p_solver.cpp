#include <cmath>

#include "doctest.h"
#include "infl/mv_solver.hpp"
#include "infl/p_solver.hpp"

using namespace infl;

namespace {

Grid line_grid(double h) { return Grid(Box{{0.0}, {1.0}}, h, Shape::rectangle()); }

}  // namespace

TEST_CASE("discrete energy closed forms") {
    Grid g = line_grid(0.25);
    ScalarField lin = sample_field(g, [](const Vec& x) { return x[0]; });
    for (double p : {2.0, 3.0, 7.5, 16.0}) CHECK(energy_p(lin, g, p) == doctest::Approx(1.0));
    ScalarField cst(g, 4.2);
    CHECK(energy_p(cst, g, 2.0) == doctest::Approx(0.0));
    ScalarField quad = sample_field(g, [](const Vec& x) { return x[0] * x[0]; });
    CHECK(energy_p(quad, g, 2.0) == doctest::Approx(1.3125));  // hand sum of forward differences
}

TEST_CASE("1D minimizer is affine for every exponent") {
    Grid g = line_grid(1.0 / 16.0);
    auto bd = boundary_trace(g, [](const Vec& x) { return x[0]; });
    for (double p : {2.0, 4.0, 16.0, 64.0}) {
        PSolveConfig cfg;
        cfg.p = p;
        cfg.tolerance = 1e-12;
        auto [u, rep] = solve_p(g, bd, cfg);
        CHECK(!rep.truncated);
        double worst = 0.0;
        for (int n = 0; n < g.num_nodes(); ++n)
            worst = std::max(worst, std::abs(u[n] - g.coords(n)[0]));
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("p=2 on the unit square reproduces the harmonic polynomial x1*x2") {
    Grid g(Box{{0.0, 0.0}, {1.0, 1.0}}, 1.0 / 16.0, Shape::rectangle());
    auto bd = boundary_trace(g, [](const Vec& x) { return x[0] * x[1]; });
    PSolveConfig cfg;
    cfg.p = 2.0;
    cfg.tolerance = 1e-10;
    auto [u, rep] = solve_p(g, bd, cfg);
    CHECK(!rep.truncated);
    double worst = 0.0;
    for (int n : g.interior_nodes()) {
        Vec x = g.coords(n);
        worst = std::max(worst, std::abs(u[n] - x[0] * x[1]));
    }
    CHECK(worst <= 1e-3);
}

TEST_CASE("energy trace is non-increasing") {
    Grid g(Box{{0.0, 0.0}, {1.0, 1.0}}, 1.0 / 8.0, Shape::rectangle());
    auto bd = boundary_trace(g, [](const Vec& x) { return std::abs(x[0] - 0.3) + x[1]; });
    PSolveConfig cfg;
    cfg.p = 6.0;
    cfg.tolerance = 1e-10;
    auto [u, rep] = solve_p(g, bd, cfg);
    for (size_t k = 1; k < rep.energy_trace.size(); ++k)
        CHECK(rep.energy_trace[k] <= rep.energy_trace[k - 1] + 1e-12);
    CHECK(rep.energy == doctest::Approx(rep.energy_trace.back()));
    CHECK(rep.first_variation <= 1e-6);
}

TEST_CASE("exponent validation") {
    PSolveConfig cfg;
    cfg.p = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.p = 128.0;
    bool threw = false;
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        threw = true;
        CHECK(std::string(e.what()).find("mean-value") != std::string::npos);
    }
    CHECK(threw);
    cfg.p = 4.0;
    cfg.tolerance = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("1D sweep: all exponents return the same linear field") {
    Grid g = line_grid(1.0 / 16.0);
    auto bd = boundary_trace(g, [](const Vec& x) { return x[0]; });
    MVConfig mc;
    mc.eps = 1.0 / 16.0;
    mc.tolerance = 1e-10;
    ScalarField ref = solve_mv(g, bd, mc).first;
    PSolveConfig cfg;
    cfg.tolerance = 1e-12;
    auto entries = p_sweep(g, bd, {2.0, 4.0, 8.0}, cfg, &ref);
    for (const auto& e : entries) {
        CHECK(e.distance_to_mv <= 1e-6);
        // gradient averages of the linear field are all 1
        for (double v : e.grad_ls) CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
    }
    CHECK_THROWS_AS(p_sweep(g, bd, {4.0, 2.0}, cfg), std::invalid_argument);
}

TEST_CASE("gradient averages respect the boundary Lipschitz bound") {
    Grid g(Box{{0.0, 0.0}, {1.0, 1.0}}, 1.0 / 8.0, Shape::rectangle());
    auto bd = boundary_trace(g, [](const Vec& x) { return 0.5 * x[0] + 0.25 * x[1]; });
    PSolveConfig cfg;
    cfg.tolerance = 1e-10;
    auto entries = p_sweep(g, bd, {2.0, 4.0, 8.0}, cfg);
    for (const auto& e : entries)
        for (size_t si = 0; si < e.grad_ls.size(); ++si) {
            double s = std::pow(2.0, si + 1.0);
            if (s <= e.p) CHECK(e.grad_ls[si] <= bd.lipschitz + 0.1);
        }
}

TEST_CASE("Poisson term lowers the solution of the J objective") {
    Grid g = line_grid(1.0 / 16.0);
    auto bd = boundary_trace(g, [](const Vec&) { return 0.0; });
    PSolveConfig cfg;
    cfg.p = 4.0;
    cfg.tolerance = 1e-12;
    auto [u0, r0] = solve_p(g, bd, cfg);
    cfg.poisson_eps = 0.5;
    auto [u1, r1] = solve_p(g, bd, cfg);
    // the -eps^{p-1} v term pushes the minimizer up from zero
    CHECK(u1.max() > u0.max() + 1e-6);
    CHECK(u1.min() >= -1e-12);
}
