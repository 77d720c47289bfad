#include "infl/tug_of_war.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace infl {

void GameConfig::validate() const {
    if (!grid) throw std::invalid_argument("game config: missing grid");
    if (!(eps > 0.0)) throw std::invalid_argument("game config: eps must be positive");
    if (eps < grid->h() * (1.0 - 1e-12))
        throw std::invalid_argument("game config: eps must be >= grid h");
    if (max_plies < 1) throw std::invalid_argument("game config: max_plies must be >= 1");
    if (runs < 1) throw std::invalid_argument("game config: runs must be >= 1");
    if (payoff.values.size() != grid->boundary_nodes().size())
        throw std::invalid_argument("game config: payoff table does not match grid boundary");
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t run) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (run + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

PlayResult play_game(const GameConfig& config, int start, const Strategy& max_strategy,
                     const Strategy& min_strategy, std::uint64_t seed) {
    config.validate();
    const Grid& grid = *config.grid;
    if (start < 0 || start >= grid.num_nodes() || !grid.is_interior(start))
        throw std::invalid_argument("play_game: start must be an interior node");

    std::mt19937_64 rng(seed);
    const double max_step = config.eps * (1.0 + 1e-9);

    PlayResult r;
    int token = start;
    while (grid.is_interior(token)) {
        if (r.plies >= config.max_plies) {
            r.truncated = true;
            return r;
        }
        bool heads = (rng() & 1ull) != 0;
        const Strategy& s = heads ? max_strategy : min_strategy;
        int dest = s.choose(grid, token, config.eps, rng);
        if (dest < 0 || dest >= grid.num_nodes() ||
            dist(grid.coords(token), grid.coords(dest)) > max_step)
            throw std::runtime_error("play_game: strategy '" + s.id +
                                     "' emitted a move beyond the eps step bound");
        token = dest;
        ++r.plies;
    }
    r.exit_node = token;
    r.payoff = config.payoff.value_at_boundary_node(grid, token);
    return r;
}

GameStats estimate_value(const GameConfig& config, int start, const Strategy& max_strategy,
                         const Strategy& min_strategy) {
    config.validate();
    if (config.runs < 30)
        throw std::invalid_argument(
            "estimate_value: needs >= 30 runs for the normal-approximation interval");

    std::vector<double> payoffs;
    payoffs.reserve(config.runs);
    GameStats st;
    st.runs = config.runs;
    double total_plies = 0.0;
    for (long k = 0; k < config.runs; ++k) {
        PlayResult r =
            play_game(config, start, max_strategy, min_strategy, mix_seed(config.master_seed, k));
        total_plies += static_cast<double>(r.plies);
        if (r.truncated)
            ++st.truncation_count;
        else
            payoffs.push_back(r.payoff);
    }
    st.mean_plies = total_plies / static_cast<double>(config.runs);
    st.truncation_warning =
        st.truncation_count > config.runs / 20;  // fraction > 5%: estimate biased

    const long n = static_cast<long>(payoffs.size());
    if (n > 0) {
        double sum = 0.0;
        for (double v : payoffs) sum += v;
        st.mean = sum / static_cast<double>(n);
        if (n > 1) {
            double ss = 0.0;
            for (double v : payoffs) ss += (v - st.mean) * (v - st.mean);
            st.variance = ss / static_cast<double>(n - 1);
        }
        st.ci_half_width = 1.96 * std::sqrt(st.variance / static_cast<double>(n));
    }
    return st;
}

std::vector<double> exact_value_1d(int n_states, double payoff_left, double payoff_right) {
    if (n_states < 3) throw std::invalid_argument("exact_value_1d: needs at least 3 states");
    const int m = n_states - 2;  // interior unknowns
    // Thomas algorithm for v(i) - (v(i-1) + v(i+1))/2 = 0
    std::vector<double> c(m, 0.0), d(m, 0.0);
    for (int i = 0; i < m; ++i) {
        double rhs = 0.0;
        if (i == 0) rhs += 0.5 * payoff_left;
        if (i == m - 1) rhs += 0.5 * payoff_right;
        double diag = 1.0 - (i > 0 ? -0.5 * c[i - 1] : 0.0);
        c[i] = -0.5 / diag;
        d[i] = (rhs + (i > 0 ? 0.5 * d[i - 1] : 0.0)) / diag;
    }
    std::vector<double> v(n_states);
    v[0] = payoff_left;
    v[n_states - 1] = payoff_right;
    // back substitution; the last unknown's boundary coupling already sits in
    // its rhs, so its trailing term is zero
    for (int i = m - 1; i >= 0; --i)
        v[i + 1] = d[i] - c[i] * (i == m - 1 ? 0.0 : v[i + 2]);
    return v;
}

Strategy dpp_strategy(const ScalarField& u, const Grid& grid, double eps, Role role) {
    if (u.grid != &grid) throw std::invalid_argument("dpp_strategy: field/grid mismatch");
    // precompute the target per interior node; stencils are sorted ascending,
    // so strict comparison keeps the smallest id on ties
    std::vector<int> target(grid.num_nodes(), -1);
    for (int node : grid.interior_nodes()) {
        int best = -1;
        double bv = role == Role::max ? -std::numeric_limits<double>::infinity()
                                      : std::numeric_limits<double>::infinity();
        for (int y : ball_stencil(grid, node, eps)) {
            bool better = role == Role::max ? u[y] > bv : u[y] < bv;
            if (better) {
                bv = u[y];
                best = y;
            }
        }
        target[node] = best;
    }
    Strategy s;
    s.id = role == Role::max ? "dpp-max" : "dpp-min";
    s.choose = [target = std::move(target)](const Grid& g, int token, double, std::mt19937_64&) {
        if (token < 0 || token >= g.num_nodes() || !g.is_interior(token))
            throw std::invalid_argument("dpp strategy: token outside grid interior");
        return target[token];
    };
    return s;
}

Strategy greedy_strategy(const Grid& grid, const BoundaryData& payoff, double eps, Role role) {
    const auto& b = grid.boundary_nodes();
    if (payoff.values.size() != b.size())
        throw std::invalid_argument("greedy_strategy: payoff table does not match grid boundary");
    // best boundary node for the role, smallest id on ties
    int goal = b[0];
    double gv = payoff.values[0];
    for (size_t i = 1; i < b.size(); ++i) {
        bool better = role == Role::max ? payoff.values[i] > gv : payoff.values[i] < gv;
        if (better) {
            gv = payoff.values[i];
            goal = b[i];
        }
    }
    std::vector<int> target(grid.num_nodes(), -1);
    Vec gx = grid.coords(goal);
    for (int node : grid.interior_nodes()) {
        int best = -1;
        double bd = std::numeric_limits<double>::infinity();
        for (int y : ball_stencil(grid, node, eps)) {
            double d = dist(grid.coords(y), gx);
            if (d < bd) {
                bd = d;
                best = y;
            }
        }
        target[node] = best;
    }
    Strategy s;
    s.id = role == Role::max ? "greedy-max" : "greedy-min";
    s.choose = [target = std::move(target)](const Grid& g, int token, double, std::mt19937_64&) {
        if (token < 0 || token >= g.num_nodes() || !g.is_interior(token))
            throw std::invalid_argument("greedy strategy: token outside grid interior");
        return target[token];
    };
    return s;
}

Strategy random_strategy() {
    Strategy s;
    s.id = "random";
    s.choose = [](const Grid& g, int token, double eps, std::mt19937_64& rng) {
        auto st = ball_stencil(g, token, eps);
        std::uniform_int_distribution<size_t> pick(0, st.size() - 1);
        return st[pick(rng)];
    };
    return s;
}

}  // namespace infl
