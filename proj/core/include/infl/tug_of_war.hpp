// Monte Carlo eps-step Tug-of-War with pluggable strategies and an exact
// small-instance Markov-chain oracle (gambler's ruin).
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "infl/grid.hpp"

namespace infl {

struct GameConfig {
    const Grid* grid = nullptr;
    double eps = 0.0;
    BoundaryData payoff;             // terminal payoff per boundary node
    long max_plies = 1000000;
    std::uint64_t master_seed = 1;
    long runs = 1;

    void validate() const;
};

// choose() returns the destination node; must be a grid node within eps of the
// token (closed lattice ball, matching the mean-value stencil).
struct Strategy {
    std::string id;
    std::function<int(const Grid&, int token, double eps, std::mt19937_64&)> choose;
};

struct PlayResult {
    int exit_node = -1;  // -1 when truncated
    double payoff = 0.0;
    long plies = 0;
    bool truncated = false;
};

// Deterministic given seed: one coin bit per ply, heads -> max player moves.
PlayResult play_game(const GameConfig& config, int start, const Strategy& max_strategy,
                     const Strategy& min_strategy, std::uint64_t seed);

struct GameStats {
    long runs = 0;
    double mean = 0.0;
    double variance = 0.0;       // sample variance over non-truncated runs
    double ci_half_width = 0.0;  // 1.96 * sqrt(variance / runs_used)
    double mean_plies = 0.0;
    long truncation_count = 0;
    bool truncation_warning = false;  // truncation fraction > 5%; mean biased
};

// Independent runs; run k uses seed = mix(master_seed, k). Truncated runs are
// excluded from the mean/variance and counted separately.
GameStats estimate_value(const GameConfig& config, int start, const Strategy& max_strategy,
                         const Strategy& min_strategy);

// v(i) = (v(i-1) + v(i+1)) / 2 on a 1D chain of n_states nodes with absorbing
// payoffs at the ends; direct tridiagonal solve.
std::vector<double> exact_value_1d(int n_states, double payoff_left, double payoff_right);

enum class Role { max, min };

// Moves to the argmax / argmin node of u over the token's eps-stencil;
// ties broken by smallest node id.
Strategy dpp_strategy(const ScalarField& u, const Grid& grid, double eps, Role role);

// Moves to the stencil node nearest the best boundary node for the role.
Strategy greedy_strategy(const Grid& grid, const BoundaryData& payoff, double eps, Role role);

// Uniform random stencil node (uses the game's RNG stream).
Strategy random_strategy();

// splitmix64-style per-run seed derivation, exposed for tests
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t run);

}  // namespace infl
