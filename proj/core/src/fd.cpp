#include "infl/fd.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace infl {

namespace {

double sample(const ScalarFn& u, const Vec& x) {
    double v = u(x);
    if (!std::isfinite(v)) throw std::runtime_error("finite-difference sample is not finite");
    return v;
}

Vec shifted(const Vec& x, size_t d, double delta) {
    Vec y = x;
    y[d] += delta;
    return y;
}

}  // namespace

Vec gradient_fd(const ScalarFn& u, const Vec& x, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("gradient_fd: h must be positive");
    Vec g(x.size());
    for (size_t d = 0; d < x.size(); ++d)
        g[d] = (sample(u, shifted(x, d, h)) - sample(u, shifted(x, d, -h))) / (2.0 * h);
    return g;
}

double infinity_laplacian_fd(const ScalarFn& u, const Vec& x, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("infinity_laplacian_fd: h must be positive");
    const size_t n = x.size();
    const double u0 = sample(u, x);
    Vec up(n), um(n), grad(n);
    for (size_t d = 0; d < n; ++d) {
        up[d] = sample(u, shifted(x, d, h));
        um[d] = sample(u, shifted(x, d, -h));
        grad[d] = (up[d] - um[d]) / (2.0 * h);
    }
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double dii = (up[i] - 2.0 * u0 + um[i]) / (h * h);
        acc += grad[i] * grad[i] * dii;
        for (size_t j = i + 1; j < n; ++j) {
            Vec xpp = shifted(shifted(x, i, h), j, h);
            Vec xpm = shifted(shifted(x, i, h), j, -h);
            Vec xmp = shifted(shifted(x, i, -h), j, h);
            Vec xmm = shifted(shifted(x, i, -h), j, -h);
            double dij = (sample(u, xpp) + sample(u, xmm) - sample(u, xpm) - sample(u, xmp)) /
                         (4.0 * h * h);
            acc += 2.0 * grad[i] * grad[j] * dij;
        }
    }
    return acc;
}

std::vector<Vec> sphere_directions(int dim, int n_dirs) {
    if (n_dirs < 2) throw std::invalid_argument("sphere_directions: n_dirs must be >= 2");
    std::vector<Vec> dirs;
    dirs.reserve(static_cast<size_t>(n_dirs));
    if (dim == 1) {
        dirs.push_back(Vec{1.0});
        dirs.push_back(Vec{-1.0});
        return dirs;
    }
    if (dim == 2) {
        for (int k = 0; k < n_dirs; ++k) {
            double th = 2.0 * std::numbers::pi * k / n_dirs;
            dirs.push_back(Vec{std::cos(th), std::sin(th)});
        }
        return dirs;
    }
    if (dim == 3) {
        // golden-angle spiral
        const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < n_dirs; ++k) {
            double z = 1.0 - 2.0 * (k + 0.5) / n_dirs;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            dirs.push_back(Vec{r * std::cos(ga * k), r * std::sin(ga * k), z});
        }
        return dirs;
    }
    std::mt19937_64 rng(0x5EED5EEDull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < n_dirs; ++k) {
        Vec d(static_cast<size_t>(dim));
        double nn = 0.0;
        do {
            for (auto& c : d) c = gauss(rng);
            nn = norm(d);
        } while (nn < 1e-12);
        for (auto& c : d) c /= nn;
        dirs.push_back(std::move(d));
    }
    return dirs;
}

double mean_value_residual(const ScalarFn& u, const Vec& x, double eps, int n_dirs) {
    if (!(eps > 0.0)) throw std::invalid_argument("mean_value_residual: eps must be positive");
    Vec g = gradient_fd(u, x, std::min(eps * 0.1, 1e-3));
    if (norm(g) < kGradientGuard)
        throw std::invalid_argument(
            "mean_value_residual: gradient below critical-point guard, direct formula invalid");
    const double u0 = sample(u, x);
    double vmax = u0, vmin = u0;
    for (const auto& d : sphere_directions(static_cast<int>(x.size()), n_dirs)) {
        Vec y = x;
        for (size_t k = 0; k < y.size(); ++k) y[k] += eps * d[k];
        double v = sample(u, y);
        vmax = std::max(vmax, v);
        vmin = std::min(vmin, v);
    }
    return 0.5 * (vmax + vmin) - u0;
}

}  // namespace infl
