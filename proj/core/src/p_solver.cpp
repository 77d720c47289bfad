#include "infl/p_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "infl/lipschitz.hpp"

namespace infl {

void PSolveConfig::validate() const {
    if (!(p >= 2.0)) throw std::invalid_argument("p config: exponent must be >= 2");
    if (p > 64.0)
        throw std::invalid_argument(
            "p config: exponent above 64 overflows in double precision; use the mean-value "
            "solver for the p -> infinity regime");
    if (!(tolerance > 0.0)) throw std::invalid_argument("p config: tolerance must be positive");
    if (max_passes < 1) throw std::invalid_argument("p config: max_passes must be >= 1");
    if (poisson_eps < 0.0) throw std::invalid_argument("p config: poisson_eps must be >= 0");
}

namespace {

// One lattice cell: lower corner plus its forward axis neighbors.
struct Cell {
    int corner = -1, fx = -1, fy = -1;  // fy = -1 in 1D
};

std::vector<Cell> build_cells(const Grid& grid) {
    std::vector<Cell> cells;
    for (int node = 0; node < grid.num_nodes(); ++node) {
        auto idx = grid.lattice_index(node);
        Cell c;
        c.corner = node;
        c.fx = grid.node_at(idx[0] + 1, idx[1]);
        if (c.fx < 0) continue;
        if (grid.dim() == 2) {
            c.fy = grid.node_at(idx[0], idx[1] + 1);
            if (c.fy < 0) continue;
        }
        cells.push_back(c);
    }
    return cells;
}

struct CellGrad {
    double gx = 0.0, gy = 0.0;
};

CellGrad cell_gradient(const ScalarField& u, const Cell& c, double h) {
    CellGrad g;
    g.gx = (u[c.fx] - u[c.corner]) / h;
    if (c.fy >= 0) g.gy = (u[c.fy] - u[c.corner]) / h;
    return g;
}

// cells touching each node, with the node's coefficient vector in that cell's
// forward-difference gradient (sx, sy in units of 1/h)
struct Touch {
    int cell;
    double sx, sy;
};

std::vector<std::vector<Touch>> build_touches(const Grid& grid, const std::vector<Cell>& cells) {
    std::vector<std::vector<Touch>> touches(grid.num_nodes());
    for (int ci = 0; ci < static_cast<int>(cells.size()); ++ci) {
        const Cell& c = cells[ci];
        double s = 1.0 / grid.h();
        touches[c.corner].push_back({ci, -s, c.fy >= 0 ? -s : 0.0});
        touches[c.fx].push_back({ci, s, 0.0});
        if (c.fy >= 0) touches[c.fy].push_back({ci, 0.0, s});
    }
    return touches;
}

double cell_measure(const Grid& grid) { return grid.dim() == 2 ? grid.h() * grid.h() : grid.h(); }

struct Objective {
    const Grid& grid;
    const std::vector<Cell>& cells;
    const std::vector<std::vector<Touch>>& touches;
    double p;
    double fac;     // 1/p for the Poisson objective, 1 for the plain energy
    double linear;  // h^d * poisson_eps^(p-1), subtracted per interior node value

    // derivative and second derivative of the objective in node's value
    std::pair<double, double> derivs(const ScalarField& u, int node) const {
        const double hd = cell_measure(grid);
        double d1 = 0.0, d2 = 0.0;
        for (const Touch& t : touches[node]) {
            CellGrad g = cell_gradient(u, cells[t.cell], grid.h());
            double w2 = g.gx * g.gx + g.gy * g.gy;
            double dot = g.gx * t.sx + g.gy * t.sy;
            double s2 = t.sx * t.sx + t.sy * t.sy;
            double wp2 = std::pow(w2, 0.5 * (p - 2.0));  // |w|^(p-2)
            d1 += p * wp2 * dot;
            d2 += p * wp2 * s2;
            if (p > 2.0 && w2 > 1e-280)
                d2 += p * (p - 2.0) * std::pow(w2, 0.5 * (p - 4.0)) * dot * dot;
        }
        return {fac * hd * d1 - linear, fac * hd * d2};
    }
};

// Exact convex 1D minimization in one nodal value: bracket the root of the
// derivative, then safeguarded Newton.
double minimize_node(const Objective& obj, ScalarField& u, int node) {
    double t = u[node];
    auto dphi = [&](double x) {
        u[node] = x;
        return obj.derivs(u, node).first;
    };
    double d0 = dphi(t);
    if (d0 == 0.0) return t;
    double step = std::max(obj.grid.h(), 1e-3);
    double lo, hi;
    if (d0 > 0.0) {
        hi = t;
        lo = t - step;
        for (int k = 0; k < 200 && dphi(lo) > 0.0; ++k) {
            hi = lo;
            step *= 2.0;
            lo -= step;
        }
    } else {
        lo = t;
        hi = t + step;
        for (int k = 0; k < 200 && dphi(hi) < 0.0; ++k) {
            lo = hi;
            step *= 2.0;
            hi += step;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        u[node] = x;
        auto [d1, d2] = obj.derivs(u, node);
        if (d1 > 0.0)
            hi = x;
        else if (d1 < 0.0)
            lo = x;
        else
            break;
        double xn = d2 > 0.0 ? x - d1 / d2 : x;
        if (!(xn > lo) || !(xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) <= 1e-15 * (1.0 + std::abs(x))) {
            x = xn;
            break;
        }
        x = xn;
    }
    u[node] = x;
    return x;
}

std::pair<ScalarField, EnergyReport> solve_from(ScalarField u, const Grid& grid,
                                                const PSolveConfig& config) {
    auto cells = build_cells(grid);
    if (cells.empty()) throw std::invalid_argument("solve_p: grid has no complete cells");
    auto touches = build_touches(grid, cells);
    const double hd = cell_measure(grid);
    const bool poisson = config.poisson_eps > 0.0;
    Objective obj{grid,
                  cells,
                  touches,
                  config.p,
                  poisson ? 1.0 / config.p : 1.0,
                  poisson ? hd * std::pow(config.poisson_eps, config.p - 1.0) : 0.0};

    auto objective_value = [&](const ScalarField& v) {
        double e = 0.0;
        for (const Cell& c : cells) {
            CellGrad g = cell_gradient(v, c, grid.h());
            e += std::pow(g.gx * g.gx + g.gy * g.gy, 0.5 * config.p);
        }
        e *= obj.fac * hd;
        if (poisson)
            for (int node : grid.interior_nodes()) e -= obj.linear * v[node];
        return e;
    };

    EnergyReport rep;
    double update = 0.0;
    long pass = 0;
    for (; pass < config.max_passes; ++pass) {
        update = 0.0;
        for (int node : grid.interior_nodes()) {
            double before = u[node];
            double after = minimize_node(obj, u, node);
            update = std::max(update, std::abs(after - before));
        }
        rep.energy_trace.push_back(objective_value(u));
        if (update <= config.tolerance) {
            ++pass;
            break;
        }
    }
    rep.passes = pass;
    rep.final_update = update;
    rep.truncated = update > config.tolerance;
    rep.energy = rep.energy_trace.empty() ? objective_value(u) : rep.energy_trace.back();
    double fv = 0.0;
    for (int node : grid.interior_nodes()) fv = std::max(fv, std::abs(obj.derivs(u, node).first));
    rep.first_variation = fv;
    return {std::move(u), rep};
}

}  // namespace

double energy_p(const ScalarField& u, const Grid& grid, double p) {
    if (!(p >= 2.0)) throw std::invalid_argument("energy_p: exponent must be >= 2");
    auto cells = build_cells(grid);
    const double hd = cell_measure(grid);
    double e = 0.0;
    for (const Cell& c : cells) {
        CellGrad g = cell_gradient(u, c, grid.h());
        e += std::pow(g.gx * g.gx + g.gy * g.gy, 0.5 * p);
    }
    return hd * e;
}

std::pair<ScalarField, EnergyReport> solve_p(const Grid& grid, const BoundaryData& g,
                                             const PSolveConfig& config) {
    config.validate();
    for (double v : g.values)
        if (!std::isfinite(v)) throw std::invalid_argument("solve_p: boundary data must be finite");
    ScalarField u = mcshane_whitney(grid, g, EnvelopeSide::upper);
    return solve_from(std::move(u), grid, config);
}

std::vector<PSweepEntry> p_sweep(const Grid& grid, const BoundaryData& g,
                                 const std::vector<double>& ps, const PSolveConfig& config,
                                 const ScalarField* mv_reference) {
    if (ps.empty()) throw std::invalid_argument("p_sweep: empty exponent list");
    for (size_t i = 1; i < ps.size(); ++i)
        if (!(ps[i] > ps[i - 1]))
            throw std::invalid_argument("p_sweep: exponents must be strictly ascending");
    if (mv_reference && mv_reference->grid != &grid)
        throw std::invalid_argument("p_sweep: reference field lives on a different grid");

    auto cells = build_cells(grid);
    const size_t ncells = cells.size();

    std::vector<PSweepEntry> out;
    ScalarField warm = mcshane_whitney(grid, g, EnvelopeSide::upper);
    for (double p : ps) {
        PSolveConfig cfg = config;
        cfg.p = p;
        cfg.validate();
        PSweepEntry e;
        e.p = p;
        std::tie(e.field, e.report) = solve_from(warm, grid, cfg);
        warm = e.field;
        for (double s : {2.0, 4.0, 8.0}) {
            double acc = 0.0;
            for (const Cell& c : cells) {
                CellGrad gr = cell_gradient(e.field, c, grid.h());
                acc += std::pow(gr.gx * gr.gx + gr.gy * gr.gy, 0.5 * s);
            }
            e.grad_ls.push_back(std::pow(acc / static_cast<double>(ncells), 1.0 / s));
        }
        if (mv_reference) e.distance_to_mv = sup_distance(e.field, *mv_reference);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace infl
