#include "infl/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace infl {

namespace {

constexpr double kSingularMargin = 0.1;

double pow43(double t) { return std::pow(std::abs(t), 4.0 / 3.0); }
double dpow43(double t) {
    double s = t >= 0 ? 1.0 : -1.0;
    return s * (4.0 / 3.0) * std::pow(std::abs(t), 1.0 / 3.0);
}

ScalarFn zero_fn() {
    return [](const Vec&) { return 0.0; };
}

}  // namespace

CatalogEntry cone_entry(Vec apex, double a, double b) {
    CatalogEntry e;
    e.id = "cone";
    e.dim = static_cast<int>(apex.size());
    Vec x0 = apex;
    e.value = [x0, a, b](const Vec& x) { return a + b * dist(x, x0); };
    e.valid = [x0](const Vec& x) { return dist(x, x0) >= 1e-6; };
    e.gradient = [x0, b](const Vec& x) {
        double r = dist(x, x0);
        Vec g(x.size());
        for (size_t d = 0; d < x.size(); ++d) g[d] = b * (x[d] - x0[d]) / r;
        return g;
    };
    e.exact_inf_laplacian = zero_fn();
    return e;
}

CatalogEntry affine_entry(Vec slope, double offset) {
    CatalogEntry e;
    e.id = "affine";
    e.dim = static_cast<int>(slope.size());
    Vec a = slope;
    e.value = [a, offset](const Vec& x) {
        double s = offset;
        for (size_t d = 0; d < x.size(); ++d) s += a[d] * x[d];
        return s;
    };
    e.valid = [](const Vec&) { return true; };
    e.gradient = [a](const Vec&) { return a; };
    e.exact_inf_laplacian = zero_fn();
    return e;
}

CatalogEntry aronsson_entry() {
    CatalogEntry e;
    e.id = "aronsson";
    e.dim = 2;
    e.value = [](const Vec& x) { return pow43(x[0]) - pow43(x[1]); };
    // second derivatives blow up on the coordinate axes
    e.valid = [](const Vec& x) {
        return std::min(std::abs(x[0]), std::abs(x[1])) >= kSingularMargin;
    };
    e.gradient = [](const Vec& x) { return Vec{dpow43(x[0]), -dpow43(x[1])}; };
    e.exact_inf_laplacian = zero_fn();
    return e;
}

CatalogEntry arctan2_entry() {
    CatalogEntry e;
    e.id = "arctan2";
    e.dim = 2;
    e.value = [](const Vec& x) { return std::atan(x[1] / x[0]); };
    e.valid = [](const Vec& x) { return std::abs(x[0]) >= kSingularMargin; };
    e.gradient = [](const Vec& x) {
        double r2 = x[0] * x[0] + x[1] * x[1];
        return Vec{-x[1] / r2, x[0] / r2};
    };
    e.exact_inf_laplacian = zero_fn();
    return e;
}

CatalogEntry radial_p_entry(double p, int n, Vec apex) {
    if (!(p > 1.0) || n < 1) throw std::invalid_argument("radial-p: requires p > 1 and n >= 1");
    CatalogEntry e;
    e.id = "radial-p";
    e.dim = n;
    if (apex.empty()) apex.assign(static_cast<size_t>(n), 0.0);
    Vec x0 = apex;
    const double alpha = (p - static_cast<double>(n)) / (p - 1.0);
    e.value = [x0, alpha](const Vec& x) { return std::pow(dist(x, x0), alpha); };
    e.valid = [x0](const Vec& x) { return dist(x, x0) >= kSingularMargin; };
    e.gradient = [x0, alpha](const Vec& x) {
        double r = dist(x, x0);
        double f = alpha * std::pow(r, alpha - 2.0);
        Vec g(x.size());
        for (size_t d = 0; d < x.size(); ++d) g[d] = f * (x[d] - x0[d]);
        return g;
    };
    // R(r) = r^alpha: Delta_inf = R'^2 R'' = alpha^3 (alpha-1) r^{3 alpha - 4}
    e.exact_inf_laplacian = [x0, alpha](const Vec& x) {
        double r = dist(x, x0);
        return alpha * alpha * alpha * (alpha - 1.0) * std::pow(r, 3.0 * alpha - 4.0);
    };
    return e;
}

CatalogEntry disjoint_sum_entry() {
    CatalogEntry e;
    e.id = "disjoint-sum";
    e.dim = 5;
    auto r12 = [](const Vec& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1]); };
    auto r34 = [](const Vec& x) { return std::sqrt(x[2] * x[2] + x[3] * x[3]); };
    e.value = [r12, r34](const Vec& x) { return r12(x) - 7.0 * r34(x) + x[4]; };
    e.valid = [r12, r34](const Vec& x) {
        return r12(x) >= kSingularMargin && r34(x) >= kSingularMargin;
    };
    e.gradient = [r12, r34](const Vec& x) {
        double a = r12(x), b = r34(x);
        return Vec{x[0] / a, x[1] / a, -7.0 * x[2] / b, -7.0 * x[3] / b, 1.0};
    };
    e.exact_inf_laplacian = zero_fn();
    return e;
}

CatalogEntry lookup_catalog(const std::string& id, const nlohmann::json& params) {
    auto vec_param = [&](const char* key, Vec def) {
        if (params.contains(key)) return params.at(key).get<Vec>();
        return def;
    };
    if (id == "cone") {
        return cone_entry(vec_param("apex", Vec{0.0, 0.0}), params.value("a", 0.0),
                          params.value("b", 1.0));
    }
    if (id == "affine") {
        return affine_entry(vec_param("slope", Vec{1.0, 0.0}), params.value("offset", 0.0));
    }
    if (id == "aronsson") return aronsson_entry();
    if (id == "arctan2") return arctan2_entry();
    if (id == "radial-p") {
        return radial_p_entry(params.value("p", 4.0), params.value("n", 2),
                              vec_param("apex", Vec{}));
    }
    if (id == "disjoint-sum") return disjoint_sum_entry();
    throw std::invalid_argument("unknown catalog identifier: " + id);
}

double eval_catalog(const CatalogEntry& entry, const Vec& x) {
    if (!entry.valid(x)) throw std::domain_error("eval_catalog: point on singular set of " + entry.id);
    double v = entry.value(x);
    if (!std::isfinite(v)) throw std::domain_error("eval_catalog: non-finite value of " + entry.id);
    return v;
}

}  // namespace infl
