// Finite-p Dirichlet solver: direct minimization of the discrete energy
// h^d * sum_cells |grad u|^p by cyclic coordinate descent, plus the p-sweep
// that tracks the variational approximations toward the mean-value solution.
#pragma once

#include <utility>
#include <vector>

#include "infl/grid.hpp"

namespace infl {

struct PSolveConfig {
    double p = 2.0;            // exponent, 2 <= p <= 64
    double tolerance = 1e-8;   // max nodal update per pass
    long max_passes = 100000;
    double poisson_eps = 0.0;  // eps-hat >= 0; positive switches to the J_p objective
    void validate() const;
};

struct EnergyReport {
    double energy = 0.0;  // I_p, or J_p when poisson_eps > 0
    long passes = 0;
    double final_update = 0.0;
    double first_variation = 0.0;  // max |d energy / d node value| at exit
    bool truncated = false;
    std::vector<double> energy_trace;  // one entry per pass, non-increasing
};

// h^d * sum over cells of |forward-difference gradient|^p. A cell is a lattice
// cell whose lower corner and its d forward neighbors are all grid nodes.
double energy_p(const ScalarField& u, const Grid& grid, double p);

std::pair<ScalarField, EnergyReport> solve_p(const Grid& grid, const BoundaryData& g,
                                             const PSolveConfig& config);

struct PSweepEntry {
    double p = 0.0;
    ScalarField field;
    EnergyReport report;
    std::vector<double> grad_ls;  // (avg over cells |grad u|^s)^(1/s) for s in {2,4,8}
    double distance_to_mv = -1.0;  // sup distance to reference; -1 when absent
};

// Ascending exponents, each solve warm-started from the previous one.
// mv_reference, when given, must live on the same grid.
std::vector<PSweepEntry> p_sweep(const Grid& grid, const BoundaryData& g,
                                 const std::vector<double>& ps, const PSolveConfig& config,
                                 const ScalarField* mv_reference = nullptr);

}  // namespace infl
