#include "infl/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace infl {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) out.push_back(f);
    return out;
}

void write_rows(const ScalarField& u, const std::vector<int>& nodes, const std::string& path) {
    const Grid& grid = *u.grid;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << (grid.dim() == 1 ? "x,value" : "x,y,value") << "\n";
    for (int node : nodes) {
        Vec x = grid.coords(node);
        for (double c : x) os << format_double(c) << ",";
        os << format_double(u[node]) << "\n";
    }
    if (!os) throw std::runtime_error("write failed: " + path);
}

std::vector<double> read_rows(const Grid& grid, const std::vector<int>& nodes,
                              const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty field file: " + path);
    const std::string expected = grid.dim() == 1 ? "x,value" : "x,y,value";
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected)
        throw std::runtime_error("field file " + path + ": expected header '" + expected +
                                 "', got '" + line + "'");
    std::vector<double> values;
    size_t row = 0;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != static_cast<size_t>(grid.dim()) + 1)
            throw std::runtime_error("field file " + path + ": bad column count at data row " +
                                     std::to_string(row + 1));
        if (row >= nodes.size())
            throw std::runtime_error("field file " + path + ": more rows than grid nodes");
        Vec x = grid.coords(nodes[row]);
        for (int d = 0; d < grid.dim(); ++d) {
            double c = std::stod(fields[d]);
            if (std::abs(c - x[d]) > 1e-9)
                throw std::runtime_error("field file " + path + ": coordinate mismatch at row " +
                                         std::to_string(row + 1));
        }
        values.push_back(std::stod(fields[grid.dim()]));
        ++row;
    }
    if (row != nodes.size())
        throw std::runtime_error("field file " + path + ": expected " +
                                 std::to_string(nodes.size()) + " rows, got " +
                                 std::to_string(row));
    return values;
}

}  // namespace

void write_field_csv(const ScalarField& u, const std::string& path) {
    if (!u.grid) throw std::invalid_argument("write_field_csv: field has no grid");
    std::vector<int> nodes(u.grid->num_nodes());
    for (int i = 0; i < u.grid->num_nodes(); ++i) nodes[i] = i;
    write_rows(u, nodes, path);
}

ScalarField read_field_csv(const Grid& grid, const std::string& path) {
    std::vector<int> nodes(grid.num_nodes());
    for (int i = 0; i < grid.num_nodes(); ++i) nodes[i] = i;
    auto values = read_rows(grid, nodes, path);
    ScalarField u(grid);
    u.values = std::move(values);
    return u;
}

BoundaryData read_boundary_table(const Grid& grid, const std::string& path) {
    auto values = read_rows(grid, grid.boundary_nodes(), path);
    return boundary_data_from_values(grid, std::move(values));
}

void write_json_report(nlohmann::json report, const std::string& path) {
    report["format_version"] = kFormatVersion;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << report.dump(2) << "\n";
    if (!os) throw std::runtime_error("write failed: " + path);
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return nlohmann::json::parse(is);
}

}  // namespace infl
