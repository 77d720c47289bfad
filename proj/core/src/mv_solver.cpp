#include "infl/mv_solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "infl/lipschitz.hpp"

namespace infl {

SchemeVariant SchemeVariant::upper(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw std::invalid_argument("upper variant: delta must be finite and positive");
    SchemeVariant v;
    v.tag = Tag::upper;
    v.delta = delta;
    return v;
}

SchemeVariant SchemeVariant::lower(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw std::invalid_argument("lower variant: delta must be finite and positive");
    SchemeVariant v;
    v.tag = Tag::lower;
    v.delta = delta;
    return v;
}

SchemeVariant SchemeVariant::poisson(ScalarFn F) {
    if (!F) throw std::invalid_argument("poisson variant: missing right-hand side");
    SchemeVariant v;
    v.tag = Tag::poisson;
    v.rhs = std::move(F);
    return v;
}

void MVConfig::validate(const Grid& grid) const {
    if (eps < grid.h() * (1.0 - 1e-12))
        throw std::invalid_argument("mv config: eps must be >= grid h");
    if (!(tolerance > 0.0)) throw std::invalid_argument("mv config: tolerance must be positive");
    if (max_sweeps < 1) throw std::invalid_argument("mv config: max_sweeps must be >= 1");
}

namespace {

// Per-node stencils resolved once; the sweep loop only walks flat arrays.
struct StencilTable {
    std::vector<int> flat;
    std::vector<size_t> offsets;  // node i: flat[offsets[i]..offsets[i+1])

    StencilTable(const Grid& grid, double eps, const std::vector<int>& centers) {
        auto offs = ball_offsets(grid.dim(), grid.h(), eps);
        offsets.assign(static_cast<size_t>(grid.num_nodes()) + 1, 0);
        std::vector<std::vector<int>> per(grid.num_nodes());
        for (int node : centers) {
            auto idx = grid.lattice_index(node);
            auto& list = per[node];
            list.reserve(offs.size());
            for (const auto& o : offs) {
                int id = grid.node_at(idx[0] + o[0], idx[1] + o[1]);
                if (id >= 0) list.push_back(id);
            }
        }
        size_t total = 0;
        for (const auto& l : per) total += l.size();
        flat.reserve(total);
        for (int i = 0; i < grid.num_nodes(); ++i) {
            offsets[i] = flat.size();
            flat.insert(flat.end(), per[i].begin(), per[i].end());
        }
        offsets[grid.num_nodes()] = flat.size();
    }
};

double correction(const MVConfig& cfg, const Grid& grid, int node) {
    const double half_eps2 = 0.5 * cfg.eps * cfg.eps;
    switch (cfg.variant.tag) {
        case SchemeVariant::Tag::plain: return 0.0;
        case SchemeVariant::Tag::upper: return half_eps2 * cfg.variant.delta;
        case SchemeVariant::Tag::lower: return -half_eps2 * cfg.variant.delta;
        case SchemeVariant::Tag::poisson: return -half_eps2 * cfg.variant.rhs(grid.coords(node));
    }
    return 0.0;
}

void sweep_into(const ScalarField& u, ScalarField& out, const StencilTable& st,
                const std::vector<int>& centers, const std::vector<double>& corr) {
    // Jacobi: all reads from u, all writes to out; order-independent.
    for (size_t k = 0; k < centers.size(); ++k) {
        int node = centers[k];
        double vmax = -std::numeric_limits<double>::infinity();
        double vmin = std::numeric_limits<double>::infinity();
        for (size_t j = st.offsets[node]; j < st.offsets[node + 1]; ++j) {
            double v = u.values[st.flat[j]];
            vmax = std::max(vmax, v);
            vmin = std::min(vmin, v);
        }
        out.values[node] = 0.5 * (vmax + vmin) + corr[k];
    }
}

std::vector<double> corrections(const MVConfig& cfg, const Grid& grid,
                                const std::vector<int>& centers) {
    std::vector<double> c(centers.size());
    for (size_t k = 0; k < centers.size(); ++k) c[k] = correction(cfg, grid, centers[k]);
    return c;
}

ScalarField iterate(const ScalarField& init, const Grid& grid, const std::vector<int>& centers,
                    const MVConfig& cfg, SolveReport& report) {
    auto t0 = std::chrono::steady_clock::now();
    StencilTable st(grid, cfg.eps, centers);
    auto corr = corrections(cfg, grid, centers);

    ScalarField cur = init, next = init;
    int direction = 0;  // +1 non-decreasing, -1 non-increasing
    bool monotone = true;
    double update = 0.0;
    long sweep = 0;
    for (; sweep < cfg.max_sweeps; ++sweep) {
        sweep_into(cur, next, st, centers, corr);
        update = 0.0;
        bool any_up = false, any_down = false;
        for (int node : centers) {
            double d = next.values[node] - cur.values[node];
            update = std::max(update, std::abs(d));
            if (d > 0.0) any_up = true;
            if (d < 0.0) any_down = true;
        }
        if (monotone) {
            if (any_up && any_down) {
                monotone = false;
            } else if (any_up || any_down) {
                int dir = any_up ? 1 : -1;
                if (direction == 0)
                    direction = dir;
                else if (direction != dir)
                    monotone = false;
            }
        }
        std::swap(cur, next);
        if (update <= cfg.tolerance) {
            ++sweep;
            break;
        }
    }
    report.sweeps = sweep;
    report.final_update = update;
    report.monotone = monotone;
    report.truncated = update > cfg.tolerance;
    report.min_value = cur.min();
    report.max_value = cur.max();
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return cur;
}

}  // namespace

ScalarField mv_sweep(const ScalarField& u, const Grid& grid, const MVConfig& config) {
    config.validate(grid);
    const auto& centers = grid.interior_nodes();
    StencilTable st(grid, config.eps, centers);
    auto corr = corrections(config, grid, centers);
    ScalarField out = u;
    sweep_into(u, out, st, centers, corr);
    return out;
}

std::pair<ScalarField, SolveReport> solve_mv(const Grid& grid, const BoundaryData& g,
                                             const MVConfig& config) {
    config.validate(grid);
    ScalarField init(grid);
    switch (config.init) {
        case MVConfig::Init::mw_upper:
            init = mcshane_whitney(grid, g, EnvelopeSide::upper);
            break;
        case MVConfig::Init::mw_lower:
            init = mcshane_whitney(grid, g, EnvelopeSide::lower);
            break;
        case MVConfig::Init::boundary_mean: {
            double mean = 0.0;
            for (double v : g.values) mean += v;
            mean /= static_cast<double>(g.values.size());
            init = ScalarField(grid, mean);
            const auto& b = grid.boundary_nodes();
            for (size_t i = 0; i < b.size(); ++i) init[b[i]] = g.values[i];
            break;
        }
    }
    SolveReport report;
    ScalarField u = iterate(init, grid, grid.interior_nodes(), config, report);
    return {std::move(u), report};
}

ScalarField solve_constrained(const ScalarField& u0, const Grid& grid,
                              const std::vector<char>& free_mask, const MVConfig& config,
                              SolveReport* report) {
    config.validate(grid);
    if (free_mask.size() != static_cast<size_t>(grid.num_nodes()))
        throw std::invalid_argument("solve_constrained: mask size mismatch");
    std::vector<int> centers;
    for (int i = 0; i < grid.num_nodes(); ++i)
        if (free_mask[i]) {
            if (!grid.is_interior(i))
                throw std::invalid_argument("solve_constrained: free nodes must be interior");
            centers.push_back(i);
        }
    if (centers.empty()) throw std::invalid_argument("solve_constrained: empty free set");
    SolveReport local;
    ScalarField u = iterate(u0, grid, centers, config, local);
    if (report) *report = local;
    return u;
}

SandwichResult solve_sandwich(const Grid& grid, const BoundaryData& g, double eps, double delta,
                              double tolerance, long max_sweeps) {
    if (!(delta > 0.0)) throw std::invalid_argument("solve_sandwich: delta must be positive");
    MVConfig cfg;
    cfg.eps = eps;
    cfg.tolerance = tolerance;
    cfg.max_sweeps = max_sweeps;

    SandwichResult r;
    cfg.variant = SchemeVariant::lower(delta);
    std::tie(r.lower, r.lower_report) = solve_mv(grid, g, cfg);
    cfg.variant = SchemeVariant::plain();
    std::tie(r.plain, r.plain_report) = solve_mv(grid, g, cfg);
    cfg.variant = SchemeVariant::upper(delta);
    std::tie(r.upper, r.upper_report) = solve_mv(grid, g, cfg);

    // discrete comparison forbids ordering violations beyond solver tolerance
    const double slack = 10.0 * tolerance;
    for (int i = 0; i < grid.num_nodes(); ++i) {
        if (r.lower[i] > r.plain[i] + slack || r.plain[i] > r.upper[i] + slack) {
            std::ostringstream os;
            os << "solve_sandwich: ordering violation at node " << i
               << " (lower=" << r.lower[i] << ", plain=" << r.plain[i]
               << ", upper=" << r.upper[i] << ")";
            throw std::runtime_error(os.str());
        }
    }
    r.gap = sup_distance(r.upper, r.lower);
    double diam = dist(grid.box().lo, grid.box().hi);
    r.continuum_reference = delta * diam;
    return r;
}

ScalarField residual_field(const ScalarField& u, const Grid& grid, double eps) {
    const auto& centers = grid.interior_nodes();
    StencilTable st(grid, eps, centers);
    ScalarField r(grid, 0.0);
    for (int node : centers) {
        double vmax = -std::numeric_limits<double>::infinity();
        double vmin = std::numeric_limits<double>::infinity();
        for (size_t j = st.offsets[node]; j < st.offsets[node + 1]; ++j) {
            double v = u.values[st.flat[j]];
            vmax = std::max(vmax, v);
            vmin = std::min(vmin, v);
        }
        r[node] = u[node] - 0.5 * (vmax + vmin);
    }
    return r;
}

}  // namespace infl
