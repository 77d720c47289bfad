// Monotone Jacobi fixed-point solver for the discrete mean-value scheme:
// plain infinity-Laplace, upper/lower perturbations, and the normalized
// infinity-Poisson right-hand side.
#pragma once

#include <utility>

#include "infl/catalog.hpp"
#include "infl/grid.hpp"

namespace infl {

struct SchemeVariant {
    enum class Tag { plain, upper, lower, poisson };
    Tag tag = Tag::plain;
    double delta = 0.0;  // perturbation magnitude for upper/lower
    ScalarFn rhs;        // F for poisson; bounded and continuous

    static SchemeVariant plain() { return {}; }
    static SchemeVariant upper(double delta);
    static SchemeVariant lower(double delta);
    static SchemeVariant poisson(ScalarFn F);
};

struct MVConfig {
    double eps = 0.0;           // ball radius, must be >= grid h
    double tolerance = 1e-8;    // sup-norm of one sweep's update
    long max_sweeps = 1000000;  // convergence is geometrically slow
    enum class Init { mw_upper, mw_lower, boundary_mean };
    Init init = Init::mw_upper;
    SchemeVariant variant;

    void validate(const Grid& grid) const;
};

struct SolveReport {
    long sweeps = 0;
    double final_update = 0.0;
    bool monotone = false;   // iterates were pointwise monotone
    bool truncated = false;  // max_sweeps hit before tolerance
    double min_value = 0.0, max_value = 0.0;
    double wall_seconds = 0.0;
};

// One Jacobi sweep: u_new(x) = (max + min)/2 over the closed eps-ball plus the
// variant correction at interior nodes; boundary values pass through.
ScalarField mv_sweep(const ScalarField& u, const Grid& grid, const MVConfig& config);

std::pair<ScalarField, SolveReport> solve_mv(const Grid& grid, const BoundaryData& g,
                                             const MVConfig& config);

// Sweeps only the nodes flagged in free_mask (size num_nodes); everything else
// keeps its u0 value and acts as Dirichlet data. Used for subdomain re-solves.
ScalarField solve_constrained(const ScalarField& u0, const Grid& grid,
                              const std::vector<char>& free_mask, const MVConfig& config,
                              SolveReport* report = nullptr);

struct SandwichResult {
    ScalarField lower, plain, upper;
    SolveReport lower_report, plain_report, upper_report;
    double gap = 0.0;             // sup |upper - lower|
    double continuum_reference;   // delta * diam(Omega), the variational bound scale
};

// Three solves sharing grid/g/eps; verifies lower <= plain <= upper pointwise.
SandwichResult solve_sandwich(const Grid& grid, const BoundaryData& g, double eps, double delta,
                              double tolerance = 1e-8, long max_sweeps = 1000000);

// r(x) = u(x) - (max + min)/2 over the closed eps-ball, on interior nodes
// (zero on boundary nodes).
ScalarField residual_field(const ScalarField& u, const Grid& grid, double eps);

}  // namespace infl
