#include "infl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace infl {

double norm(const Vec& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double dist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Shape Shape::annulus(double r1, double r2) {
    if (!(r1 > 0.0) || !(r2 > r1)) throw std::invalid_argument("annulus requires 0 < r1 < r2");
    Shape s;
    s.type = Type::annulus;
    s.r1 = r1;
    s.r2 = r2;
    return s;
}

Shape Shape::lshape() {
    Shape s;
    s.type = Type::lshape;
    return s;
}

Shape Shape::from_mask_rows(std::vector<std::string> rows) {
    if (rows.empty()) throw std::invalid_argument("mask shape: no rows");
    for (const auto& r : rows) {
        if (r.size() != rows.front().size())
            throw std::invalid_argument("mask shape: ragged rows");
        for (char c : r)
            if (c != '0' && c != '1')
                throw std::invalid_argument("mask shape: characters must be 0 or 1");
    }
    Shape s;
    s.type = Type::mask;
    s.mask = std::move(rows);
    return s;
}

Shape Shape::from_mask_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("mask shape: cannot open " + path);
    std::vector<std::string> rows;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) rows.push_back(line);
    }
    // file rows are top-down; internal row 0 is the lowest y
    std::reverse(rows.begin(), rows.end());
    return from_mask_rows(std::move(rows));
}

std::string Shape::describe() const {
    switch (type) {
        case Type::rectangle: return "rectangle";
        case Type::annulus: {
            std::ostringstream os;
            os << "annulus(" << r1 << ", " << r2 << ")";
            return os.str();
        }
        case Type::lshape: return "L-shape";
        case Type::mask: return "mask";
    }
    return "?";
}

namespace {

// closed membership predicate; tol absorbs roundoff on lattice coordinates
bool in_shape(const Shape& shape, const Box& box, const Vec& x, int ix, int iy) {
    const double tol = 1e-9;
    switch (shape.type) {
        case Shape::Type::rectangle: {
            for (size_t d = 0; d < x.size(); ++d)
                if (x[d] < box.lo[d] - tol || x[d] > box.hi[d] + tol) return false;
            return true;
        }
        case Shape::Type::annulus: {
            Vec c(x.size());
            for (size_t d = 0; d < x.size(); ++d) c[d] = 0.5 * (box.lo[d] + box.hi[d]);
            double r = dist(x, c);
            return r >= shape.r1 - tol && r <= shape.r2 + tol;
        }
        case Shape::Type::lshape: {
            for (size_t d = 0; d < x.size(); ++d)
                if (x[d] < box.lo[d] - tol || x[d] > box.hi[d] + tol) return false;
            if (x.size() < 2) return true;
            double cx = 0.5 * (box.lo[0] + box.hi[0]);
            double cy = 0.5 * (box.lo[1] + box.hi[1]);
            return !(x[0] > cx + tol && x[1] > cy + tol);
        }
        case Shape::Type::mask: {
            if (iy < 0 || iy >= static_cast<int>(shape.mask.size())) return false;
            const std::string& row = shape.mask[iy];
            if (ix < 0 || ix >= static_cast<int>(row.size())) return false;
            return row[ix] == '1';
        }
    }
    return false;
}

}  // namespace

Grid::Grid(const Box& box, double h, const Shape& shape) : h_(h), box_(box), shape_(shape) {
    if (!(h > 0.0)) throw std::invalid_argument("build_grid: h must be positive");
    if (box.lo.size() != box.hi.size() || box.lo.empty() || box.lo.size() > 2)
        throw std::invalid_argument("build_grid: box must be 1D or 2D");
    dim_ = static_cast<int>(box.lo.size());
    for (int d = 0; d < dim_; ++d)
        if (!(box.hi[d] > box.lo[d]))
            throw std::invalid_argument("build_grid: degenerate bounding box");

    for (int d = 0; d < dim_; ++d) {
        double span = box.hi[d] - box.lo[d];
        int n = static_cast<int>(std::floor(span / h + 1e-9)) + 1;
        extent_[d] = n;
    }
    if (shape.type == Shape::Type::mask) {
        if (static_cast<int>(shape.mask.size()) != (dim_ == 2 ? extent_[1] : 1) ||
            static_cast<int>(shape.mask.front().size()) != extent_[0])
            throw std::invalid_argument("build_grid: mask dimensions do not match box/h lattice");
    }

    const int nx = extent_[0], ny = extent_[1];
    auto flat = [nx](int ix, int iy) { return iy * nx + ix; };
    std::vector<char> inside(static_cast<size_t>(nx) * ny, 0);
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            Vec x{box.lo[0] + ix * h};
            if (dim_ == 2) x.push_back(box.lo[1] + iy * h);
            inside[flat(ix, iy)] = in_shape(shape, box, x, ix, iy) ? 1 : 0;
        }

    lattice_to_node_.assign(static_cast<size_t>(nx) * ny, -1);
    // row-major by ascending coordinates: y outer, x inner
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            if (!inside[flat(ix, iy)]) continue;
            bool interior = true;
            const int off[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
            int nneigh = dim_ == 1 ? 2 : 4;
            for (int k = 0; k < nneigh; ++k) {
                int jx = ix + off[k][0], jy = iy + off[k][1];
                if (jx < 0 || jx >= nx || jy < 0 || jy >= ny || !inside[flat(jx, jy)]) {
                    interior = false;
                    break;
                }
            }
            int id = static_cast<int>(idx_.size());
            idx_.push_back({ix, iy});
            class_.push_back(interior ? NodeClass::interior : NodeClass::boundary);
            lattice_to_node_[flat(ix, iy)] = id;
            if (interior)
                interior_.push_back(id);
            else
                boundary_.push_back(id);
        }
    num_interior_ = static_cast<int>(interior_.size());

    if (interior_.empty())
        throw std::invalid_argument("build_grid: empty interior for shape " + shape.describe() +
                                    " at h = " + std::to_string(h));
    if (boundary_.empty())
        throw std::invalid_argument("build_grid: empty boundary for shape " + shape.describe());

    // interior connectivity via distance-h adjacency
    std::vector<char> seen(idx_.size(), 0);
    std::queue<int> q;
    q.push(interior_.front());
    seen[interior_.front()] = 1;
    int reached = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        ++reached;
        for (int w : axis_neighbors(v)) {
            if (!seen[w] && is_interior(w)) {
                seen[w] = 1;
                q.push(w);
            }
        }
    }
    if (reached != num_interior_)
        throw std::invalid_argument("build_grid: interior set is disconnected for shape " +
                                    shape.describe() + " at h = " + std::to_string(h));
}

Vec Grid::coords(int node) const {
    Vec x{box_.lo[0] + idx_[node][0] * h_};
    if (dim_ == 2) x.push_back(box_.lo[1] + idx_[node][1] * h_);
    return x;
}

int Grid::node_at(int ix, int iy) const {
    if (ix < 0 || ix >= extent_[0] || iy < 0 || iy >= extent_[1]) return -1;
    return lattice_to_node_[static_cast<size_t>(iy) * extent_[0] + ix];
}

int Grid::locate(const Vec& x) const {
    int ix = static_cast<int>(std::lround((x[0] - box_.lo[0]) / h_));
    int iy = dim_ == 2 ? static_cast<int>(std::lround((x[1] - box_.lo[1]) / h_)) : 0;
    return node_at(ix, iy);
}

std::vector<int> Grid::axis_neighbors(int node) const {
    std::vector<int> out;
    const int off[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    int nneigh = dim_ == 1 ? 2 : 4;
    for (int k = 0; k < nneigh; ++k) {
        int id = node_at(idx_[node][0] + off[k][0], idx_[node][1] + off[k][1]);
        if (id >= 0) out.push_back(id);
    }
    return out;
}

Grid build_grid(const Box& box, double h, const Shape& shape) { return Grid(box, h, shape); }

std::vector<std::array<int, 2>> ball_offsets(int dim, double h, double eps) {
    int radius = static_cast<int>(std::floor(eps / h + 1e-9));
    double r2 = (eps / h) * (eps / h) * (1.0 + 1e-12);
    std::vector<std::array<int, 2>> offs;
    int ylo = dim == 2 ? -radius : 0, yhi = dim == 2 ? radius : 0;
    for (int dy = ylo; dy <= yhi; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (dx * dx + dy * dy <= r2) offs.push_back({dx, dy});
    return offs;
}

std::vector<int> ball_stencil(const Grid& grid, int node, double eps) {
    if (!grid.is_interior(node))
        throw std::invalid_argument("ball_stencil: center node must be interior");
    if (eps < grid.h() * (1.0 - 1e-12))
        throw std::invalid_argument("ball_stencil: eps must be >= h (stencil degenerates)");
    auto idx = grid.lattice_index(node);
    std::vector<int> out;
    for (const auto& o : ball_offsets(grid.dim(), grid.h(), eps)) {
        int id = grid.node_at(idx[0] + o[0], idx[1] + o[1]);
        if (id >= 0) out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double BoundaryData::value_at_boundary_node(const Grid& grid, int node) const {
    const auto& b = grid.boundary_nodes();
    auto it = std::lower_bound(b.begin(), b.end(), node);
    if (it == b.end() || *it != node)
        throw std::invalid_argument("BoundaryData: node is not a boundary node");
    return values[static_cast<size_t>(it - b.begin())];
}

BoundaryData boundary_data_from_values(const Grid& grid, std::vector<double> values) {
    if (values.size() != grid.boundary_nodes().size())
        throw std::invalid_argument("boundary data size does not match boundary node count");
    BoundaryData bd;
    bd.values = std::move(values);
    const auto& b = grid.boundary_nodes();
    double L = 0.0;
    for (size_t i = 0; i < b.size(); ++i) {
        if (!std::isfinite(bd.values[i]))
            throw std::invalid_argument("non-finite boundary value at node " + std::to_string(b[i]));
        Vec xi = grid.coords(b[i]);
        for (size_t j = i + 1; j < b.size(); ++j) {
            double d = dist(xi, grid.coords(b[j]));
            if (d > 0.0) L = std::max(L, std::abs(bd.values[i] - bd.values[j]) / d);
        }
    }
    bd.lipschitz = L;
    return bd;
}

BoundaryData boundary_trace(const Grid& grid, const std::function<double(const Vec&)>& g) {
    std::vector<double> vals;
    vals.reserve(grid.boundary_nodes().size());
    for (int node : grid.boundary_nodes()) vals.push_back(g(grid.coords(node)));
    return boundary_data_from_values(grid, std::move(vals));
}

double ScalarField::min() const { return *std::min_element(values.begin(), values.end()); }
double ScalarField::max() const { return *std::max_element(values.begin(), values.end()); }

double sup_distance(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

ScalarField sample_field(const Grid& grid, const std::function<double(const Vec&)>& f) {
    ScalarField u(grid);
    for (int i = 0; i < grid.num_nodes(); ++i) u[i] = f(grid.coords(i));
    return u;
}

}  // namespace infl
