// Pointwise finite-difference evaluators: gradient, infinity-Laplacian,
// and the eps-ball mean-value residual.
#pragma once

#include "infl/catalog.hpp"
#include "infl/grid.hpp"

namespace infl {

// Central differences, O(h^2) for C^3 functions.
Vec gradient_fd(const ScalarFn& u, const Vec& x, double h);

// Sum_ij D_i u D_j u D_ij u with central second-order differences, O(h^2)
// consistency for C^4 functions.
double infinity_laplacian_fd(const ScalarFn& u, const Vec& x, double h);

// (max + min)/2 - u(x), extrema over the center plus n_dirs points on the
// sphere |y - x| = eps. Requires |grad u(x)| above the critical-point guard;
// residual / eps^2 -> Delta_inf u / (2 |grad u|^2) for smooth u.
double mean_value_residual(const ScalarFn& u, const Vec& x, double eps, int n_dirs);

// Guard below which the direct mean-value formula is refused.
inline constexpr double kGradientGuard = 1e-6;

// n_dirs unit directions: equispaced in 2D, golden-angle spiral in 3D,
// deterministic seeded directions beyond.
std::vector<Vec> sphere_directions(int dim, int n_dirs);

}  // namespace infl
