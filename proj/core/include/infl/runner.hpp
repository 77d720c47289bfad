// Config-driven orchestration behind the CLI: domain/boundary construction
// from JSON, solver dispatch, artifact writing.
#pragma once

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "infl/grid.hpp"

namespace infl {

// exit statuses shared with the CLI
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNotConverged = 3;

std::unique_ptr<Grid> build_domain(const nlohmann::json& config);
BoundaryData build_boundary(const Grid& grid, const nlohmann::json& config);

// Dispatches one of: solve-mv, solve-p, sweep-p, sandwich, extend, verify,
// tug-of-war, residual. Writes artifacts per config["output"], prints a
// one-line summary, and returns the exit status (validation problems raise
// std::invalid_argument / nlohmann::json exceptions; the CLI maps those to 2).
int run(const std::string& command, const nlohmann::json& config);

}  // namespace infl
