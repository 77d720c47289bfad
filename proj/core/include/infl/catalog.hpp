// Closed-form classical/viscosity solutions of the infinity-Laplace equation,
// used as oracles throughout the solvers and verifiers.
#pragma once

#include <functional>
#include <string>

#include "infl/grid.hpp"
#include "nlohmann/json.hpp"

namespace infl {

using ScalarFn = std::function<double(const Vec&)>;

struct CatalogEntry {
    std::string id;
    int dim = 0;  // natural dimension (0 = any)
    ScalarFn value;
    std::function<bool(const Vec&)> valid;
    std::function<Vec(const Vec&)> gradient;  // exact gradient, may be null
    // analytic Delta_inf; zero for all members except the radial p-harmonic family
    ScalarFn exact_inf_laplacian;
};

// C(x) = a + b|x - apex|
CatalogEntry cone_entry(Vec apex, double a, double b);
// <slope, x> + offset
CatalogEntry affine_entry(Vec slope, double offset);
// x1^{4/3} - x2^{4/3} (even powers: |x1|^{4/3} - |x2|^{4/3})
CatalogEntry aronsson_entry();
// arctan(x2/x1)
CatalogEntry arctan2_entry();
// |x - apex|^{(p-n)/(p-1)}
CatalogEntry radial_p_entry(double p, int n, Vec apex = {});
// sqrt(x1^2+x2^2) - 7 sqrt(x3^2+x4^2) + x5, disjoint-variable superposition
CatalogEntry disjoint_sum_entry();

// Resolves a stable identifier (cone, affine, aronsson, arctan2, radial-p,
// disjoint-sum) with JSON parameters, as used by CLI configs.
CatalogEntry lookup_catalog(const std::string& id, const nlohmann::json& params = {});

// Validity-checked evaluation; throws std::domain_error on the singular set.
double eval_catalog(const CatalogEntry& entry, const Vec& x);

}  // namespace infl
