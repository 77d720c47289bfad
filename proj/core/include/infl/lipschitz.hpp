// McShane-Whitney extensions, discrete Lipschitz norms, and the
// comparison-principle verifiers (cones, Harnack, three spheres, AMLE).
#pragma once

#include <string>
#include <vector>

#include "infl/grid.hpp"
#include "infl/mv_solver.hpp"

namespace infl {

enum class EnvelopeSide { upper, lower };

// upper: min over boundary xi of g(xi) + L|x - xi|; lower: max of g(xi) - L|x - xi|.
ScalarField mcshane_whitney(const Grid& grid, const BoundaryData& g, EnvelopeSide side);

struct LipschitzResult {
    double constant = 0.0;
    bool singleton_warning = false;
};

// max over node pairs in region of |u(x) - u(y)| / |x - y|
LipschitzResult lipschitz_constant(const ScalarField& u, const Grid& grid,
                                   const std::vector<int>& region);

struct ComparisonReport {
    std::string property;
    bool pass = false;
    double worst_violation = 0.0;  // >= 0; pass iff violation <= tolerance
    double tolerance = 0.0;
    std::vector<int> worst_nodes;
    std::string parameters;
};

// Nodes of the subdomain adjacent (distance h) to its complement.
std::vector<int> discrete_boundary(const Grid& grid, const std::vector<int>& subdomain);

enum class ConeSide { above, below };

// Definition-6.1 inequality u(x) - b|x - x0| <=/>= extremum over the discrete
// subdomain boundary, checked at every subdomain node. Requires the apex
// outside the subdomain. Allowance: tol_rel * ||u||_inf + c * h.
ComparisonReport check_cone_comparison(const ScalarField& u, const Grid& grid,
                                       const std::vector<int>& subdomain, const Vec& apex,
                                       double b, ConeSide side, double tol_rel = 1e-6,
                                       double c = 2.0);

enum class HarnackForm { factor3, exponential };

// factor3: u(y) <= 3 u(x) on pairs in B(x0, r) with 4r < R; exponential:
// u(x) <= u(y) exp(|x - y| / (R - r)). Requires u >= 0 on B(x0, R).
ComparisonReport check_harnack(const ScalarField& u, const Grid& grid, const Vec& x0, double r,
                               double R, HarnackForm form, double slack = 0.0);

enum class ProfileMode { max, min };

struct SphereProfile {
    std::vector<double> radii;
    std::vector<double> values;
    std::vector<double> second_differences;
    ComparisonReport convexity;  // convex for max profiles, concave for min
};

// Shells are nodes with |dist(node, x0) - r| <= h/2.
SphereProfile sphere_profile(const ScalarField& u, const Grid& grid, const Vec& x0,
                             const std::vector<double>& radii, ProfileMode mode,
                             double tol_rel = 1e-3, double c = 1.0);

// Re-solves on the subdomain with u's own trace, compares Lipschitz constants
// against the re-solve and random same-trace competitors.
ComparisonReport check_amle(const ScalarField& u, const Grid& grid,
                            const std::vector<int>& subdomain, const MVConfig& mv_config,
                            int n_competitors = 20, uint64_t seed = 1, double c = 2.0);

}  // namespace infl
