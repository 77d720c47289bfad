// Lattice discretization of bounded 1D/2D domains with interior/boundary
// node classification, eps-ball stencils, and boundary traces.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace infl {

using Vec = std::vector<double>;

double norm(const Vec& x);
double dist(const Vec& a, const Vec& b);

enum class NodeClass { interior, boundary };

struct Shape {
    enum class Type { rectangle, annulus, lshape, mask };
    Type type = Type::rectangle;
    double r1 = 0.0, r2 = 0.0;          // annulus radii, centered at box center
    std::vector<std::string> mask;       // '0'/'1' rows, row 0 = lowest y

    static Shape rectangle() { return {}; }
    static Shape annulus(double r1, double r2);
    static Shape lshape();
    static Shape from_mask_rows(std::vector<std::string> rows);
    static Shape from_mask_file(const std::string& path);

    std::string describe() const;
};

struct Box {
    Vec lo, hi;  // corner points, dim 1 or 2
};

// Immutable after construction; safe for concurrent reads.
class Grid {
public:
    Grid(const Box& box, double h, const Shape& shape);

    int dim() const { return dim_; }
    double h() const { return h_; }
    const Box& box() const { return box_; }
    const Shape& shape() const { return shape_; }

    int num_nodes() const { return static_cast<int>(class_.size()); }
    int num_interior() const { return num_interior_; }
    int num_boundary() const { return num_nodes() - num_interior_; }

    NodeClass node_class(int node) const { return class_[node]; }
    bool is_interior(int node) const { return class_[node] == NodeClass::interior; }
    Vec coords(int node) const;
    std::array<int, 2> lattice_index(int node) const { return idx_[node]; }

    const std::vector<int>& interior_nodes() const { return interior_; }
    const std::vector<int>& boundary_nodes() const { return boundary_; }

    // Node id at lattice index, or -1 when exterior / out of range.
    int node_at(int ix, int iy = 0) const;

    // Nearest node to a point, or -1 when the nearest lattice site is exterior.
    int locate(const Vec& x) const;

    // Axis neighbors at distance h (existing domain nodes only).
    std::vector<int> axis_neighbors(int node) const;

    std::array<int, 2> extent() const { return extent_; }

private:
    int dim_;
    double h_;
    Box box_;
    Shape shape_;
    std::array<int, 2> extent_{1, 1};
    std::vector<std::array<int, 2>> idx_;   // lattice index per node, row-major order
    std::vector<NodeClass> class_;
    std::vector<int> interior_, boundary_;
    std::vector<int32_t> lattice_to_node_;  // -1 = exterior
    int num_interior_ = 0;
};

Grid build_grid(const Box& box, double h, const Shape& shape);

// Closed discrete ball {y in interior+boundary : |y - x| <= eps}, deterministic
// order (ascending node id). Requires an interior center and eps >= h.
std::vector<int> ball_stencil(const Grid& grid, int node, double eps);

// Lattice offsets (dx, dy) with |offset| * h <= eps, shared by all nodes.
std::vector<std::array<int, 2>> ball_offsets(int dim, double h, double eps);

struct BoundaryData {
    // values[i] belongs to grid.boundary_nodes()[i]
    std::vector<double> values;
    double lipschitz = 0.0;

    double value_at_boundary_node(const Grid& grid, int node) const;
};

// Samples g at every boundary node and computes the discrete Lipschitz
// constant over all boundary pairs (Euclidean distance through ambient space).
BoundaryData boundary_trace(const Grid& grid, const std::function<double(const Vec&)>& g);

BoundaryData boundary_data_from_values(const Grid& grid, std::vector<double> values);

struct ScalarField {
    const Grid* grid = nullptr;
    std::vector<double> values;  // one per node id

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0)
        : grid(&g), values(static_cast<size_t>(g.num_nodes()), fill) {}

    double& operator[](int node) { return values[node]; }
    double operator[](int node) const { return values[node]; }

    double min() const;
    double max() const;
};

// sup |a - b| over all nodes (fields on the same grid)
double sup_distance(const ScalarField& a, const ScalarField& b);

// Samples a point function on every node.
ScalarField sample_field(const Grid& grid, const std::function<double(const Vec&)>& f);

}  // namespace infl
