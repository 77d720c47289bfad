// CLI entry point: `infl <command> <config.json>`.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "infl/io.hpp"
#include "infl/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for the infinity-Laplace Dirichlet problem"};
    app.require_subcommand(1);

    const std::vector<std::string> commands = {"solve-mv", "solve-p",    "sweep-p", "sandwich",
                                               "extend",   "tug-of-war", "verify",  "residual"};
    const std::vector<std::string> descriptions = {
        "mean-value scheme solve (plain/upper/lower variants)",
        "finite-p energy minimization",
        "warm-started sweep over ascending exponents",
        "lower/plain/upper bracketing solves",
        "McShane-Whitney Lipschitz extension",
        "Monte Carlo tug-of-war value estimate",
        "comparison-principle checklist on a field",
        "mean-value residual of a field"};

    std::string config_path;
    std::string chosen;
    for (size_t i = 0; i < commands.size(); ++i) {
        auto* sub = app.add_subcommand(commands[i], descriptions[i]);
        sub->add_option("config", config_path, "JSON run configuration")
            ->required()
            ->check(CLI::ExistingFile);
        sub->callback([&chosen, name = commands[i]]() { chosen = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        return infl::run(chosen, infl::read_json(config_path));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return infl::kExitConfigError;
    }
}
