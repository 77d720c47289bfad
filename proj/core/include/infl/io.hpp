// Field CSV import/export (17-significant-digit decimals, round-trip exact
// for doubles) and JSON report writing, all formats versioned.
#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "infl/grid.hpp"

namespace infl {

inline constexpr int kFormatVersion = 1;

// %.17g — shortest representation that round-trips a double through decimal
std::string format_double(double v);

// header "x,value" (1D) or "x,y,value" (2D); rows in node-id (row-major) order
void write_field_csv(const ScalarField& u, const std::string& path);

// Validates header, row count, and node coordinates against the grid.
ScalarField read_field_csv(const Grid& grid, const std::string& path);

// Plain value table (one value per boundary node, in boundary-node order):
// same field CSV layout restricted to boundary nodes.
BoundaryData read_boundary_table(const Grid& grid, const std::string& path);

// Adds format_version, writes with 2-space indent and trailing newline.
void write_json_report(nlohmann::json report, const std::string& path);

nlohmann::json read_json(const std::string& path);

}  // namespace infl
