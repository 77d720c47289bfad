#include "infl/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "infl/catalog.hpp"
#include "infl/io.hpp"
#include "infl/lipschitz.hpp"
#include "infl/mv_solver.hpp"
#include "infl/p_solver.hpp"
#include "infl/tug_of_war.hpp"

namespace infl {

namespace {

using nlohmann::json;

Vec to_vec(const json& a) {
    Vec v;
    for (const auto& c : a) v.push_back(c.get<double>());
    return v;
}

double require_number(const json& cfg, const std::string& key) {
    if (!cfg.contains(key) || !cfg[key].is_number())
        throw std::invalid_argument("config: missing or non-numeric key '" + key + "'");
    return cfg[key].get<double>();
}

std::string output_path(const json& cfg, const std::string& kind) {
    if (cfg.contains("output") && cfg["output"].contains(kind))
        return cfg["output"][kind].get<std::string>();
    return {};
}

MVConfig mv_config_from(const json& cfg, const Grid& grid) {
    MVConfig mc;
    mc.eps = require_number(cfg, "eps");
    if (mc.eps < grid.h() * (1.0 - 1e-12))
        throw std::invalid_argument("config: eps must be >= grid spacing h");
    if (cfg.contains("tolerance")) mc.tolerance = cfg["tolerance"].get<double>();
    if (cfg.contains("max_sweeps")) mc.max_sweeps = cfg["max_sweeps"].get<long>();
    std::string init = cfg.value("init", "mw_upper");
    if (init == "mw_upper")
        mc.init = MVConfig::Init::mw_upper;
    else if (init == "mw_lower")
        mc.init = MVConfig::Init::mw_lower;
    else if (init == "boundary_mean")
        mc.init = MVConfig::Init::boundary_mean;
    else
        throw std::invalid_argument("config: unknown init '" + init + "'");
    std::string variant = cfg.value("variant", "plain");
    if (variant == "plain")
        mc.variant = SchemeVariant::plain();
    else if (variant == "upper")
        mc.variant = SchemeVariant::upper(require_number(cfg, "delta"));
    else if (variant == "lower")
        mc.variant = SchemeVariant::lower(require_number(cfg, "delta"));
    else
        throw std::invalid_argument("config: unknown variant '" + variant + "'");
    return mc;
}

PSolveConfig p_config_from(const json& cfg) {
    PSolveConfig pc;
    pc.p = require_number(cfg, "p");
    if (cfg.contains("tolerance")) pc.tolerance = cfg["tolerance"].get<double>();
    if (cfg.contains("max_passes")) pc.max_passes = cfg["max_passes"].get<long>();
    if (cfg.contains("poisson_eps")) pc.poisson_eps = cfg["poisson_eps"].get<double>();
    pc.validate();
    return pc;
}

json report_of(const SolveReport& r) {
    return {{"sweeps", r.sweeps},        {"final_update", r.final_update},
            {"monotone", r.monotone},    {"truncated", r.truncated},
            {"min_value", r.min_value},  {"max_value", r.max_value},
            {"wall_seconds", r.wall_seconds}};
}

json report_of(const ComparisonReport& r) {
    return {{"property", r.property},
            {"pass", r.pass},
            {"worst_violation", r.worst_violation},
            {"tolerance", r.tolerance},
            {"worst_nodes", r.worst_nodes},
            {"parameters", r.parameters}};
}

int run_solve_mv(const json& cfg) {
    auto grid = build_domain(cfg);
    auto g = build_boundary(*grid, cfg);
    auto mc = mv_config_from(cfg, *grid);
    auto [u, rep] = solve_mv(*grid, g, mc);
    if (auto p = output_path(cfg, "field"); !p.empty()) write_field_csv(u, p);
    if (auto p = output_path(cfg, "report"); !p.empty())
        write_json_report({{"command", "solve-mv"}, {"solver", report_of(rep)}}, p);
    std::printf("solve-mv: %d nodes, %ld sweeps, final update %.3g%s\n", grid->num_nodes(),
                rep.sweeps, rep.final_update, rep.truncated ? " (NOT CONVERGED)" : "");
    return rep.truncated ? kExitNotConverged : kExitOk;
}

int run_solve_p(const json& cfg) {
    auto grid = build_domain(cfg);
    auto g = build_boundary(*grid, cfg);
    auto pc = p_config_from(cfg);
    auto [u, rep] = solve_p(*grid, g, pc);
    if (auto p = output_path(cfg, "field"); !p.empty()) write_field_csv(u, p);
    if (auto p = output_path(cfg, "report"); !p.empty())
        write_json_report({{"command", "solve-p"},
                           {"p", pc.p},
                           {"energy", rep.energy},
                           {"passes", rep.passes},
                           {"final_update", rep.final_update},
                           {"first_variation", rep.first_variation},
                           {"truncated", rep.truncated}},
                          p);
    std::printf("solve-p: p=%g, energy %.6g, %ld passes%s\n", pc.p, rep.energy, rep.passes,
                rep.truncated ? " (NOT CONVERGED)" : "");
    return rep.truncated ? kExitNotConverged : kExitOk;
}

int run_sweep_p(const json& cfg) {
    auto grid = build_domain(cfg);
    auto g = build_boundary(*grid, cfg);
    if (!cfg.contains("ps") || !cfg["ps"].is_array() || cfg["ps"].empty())
        throw std::invalid_argument("config: sweep-p needs a non-empty 'ps' array");
    std::vector<double> ps;
    for (const auto& v : cfg["ps"]) ps.push_back(v.get<double>());
    PSolveConfig pc;
    pc.p = ps.front();
    if (cfg.contains("tolerance")) pc.tolerance = cfg["tolerance"].get<double>();
    if (cfg.contains("max_passes")) pc.max_passes = cfg["max_passes"].get<long>();

    ScalarField mv_ref;
    const ScalarField* ref = nullptr;
    if (cfg.contains("eps")) {
        auto mc = mv_config_from(cfg, *grid);
        mv_ref = solve_mv(*grid, g, mc).first;
        ref = &mv_ref;
    }
    auto entries = p_sweep(*grid, g, ps, pc, ref);

    bool truncated = false;
    if (auto p = output_path(cfg, "field"); !p.empty()) {
        std::ofstream os(p);
        if (!os) throw std::runtime_error("cannot open for writing: " + p);
        os << "p,energy,distance_to_mv,grad_l2,grad_l4,grad_l8\n";
        for (const auto& e : entries) {
            os << format_double(e.p) << "," << format_double(e.report.energy) << ","
               << format_double(e.distance_to_mv) << "," << format_double(e.grad_ls[0]) << ","
               << format_double(e.grad_ls[1]) << "," << format_double(e.grad_ls[2]) << "\n";
        }
    }
    json rows = json::array();
    for (const auto& e : entries) {
        truncated = truncated || e.report.truncated;
        rows.push_back({{"p", e.p},
                        {"energy", e.report.energy},
                        {"passes", e.report.passes},
                        {"distance_to_mv", e.distance_to_mv},
                        {"grad_ls", e.grad_ls},
                        {"truncated", e.report.truncated}});
    }
    if (auto p = output_path(cfg, "report"); !p.empty())
        write_json_report({{"command", "sweep-p"}, {"entries", rows}}, p);
    std::printf("sweep-p: %zu exponents, final distance-to-mv %.6g%s\n", entries.size(),
                entries.back().distance_to_mv, truncated ? " (NOT CONVERGED)" : "");
    return truncated ? kExitNotConverged : kExitOk;
}

int run_sandwich(const json& cfg) {
    auto grid = build_domain(cfg);
    auto g = build_boundary(*grid, cfg);
    double eps = require_number(cfg, "eps");
    double delta = require_number(cfg, "delta");
    double tol = cfg.value("tolerance", 1e-8);
    long max_sweeps = cfg.value("max_sweeps", 1000000L);
    auto r = solve_sandwich(*grid, g, eps, delta, tol, max_sweeps);
    if (auto p = output_path(cfg, "field_lower"); !p.empty()) write_field_csv(r.lower, p);
    if (auto p = output_path(cfg, "field"); !p.empty()) write_field_csv(r.plain, p);
    if (auto p = output_path(cfg, "field_upper"); !p.empty()) write_field_csv(r.upper, p);
    bool truncated =
        r.lower_report.truncated || r.plain_report.truncated || r.upper_report.truncated;
    if (auto p = output_path(cfg, "report"); !p.empty())
        write_json_report({{"command", "sandwich"},
                           {"delta", delta},
                           {"gap", r.gap},
                           {"continuum_reference", r.continuum_reference},
                           {"lower", report_of(r.lower_report)},
                           {"plain", report_of(r.plain_report)},
                           {"upper", report_of(r.upper_report)}},
                          p);
    std::printf("sandwich: delta=%g, gap %.6g (reference %.6g)%s\n", delta, r.gap,
                r.continuum_reference, truncated ? " (NOT CONVERGED)" : "");
    return truncated ? kExitNotConverged : kExitOk;
}

int run_extend(const json& cfg) {
    auto grid = build_domain(cfg);
    auto g = build_boundary(*grid, cfg);
    std::string side = cfg.value("side", "upper");
    if (side != "upper" && side != "lower")
        throw std::invalid_argument("config: side must be 'upper' or 'lower'");
    ScalarField u = mcshane_whitney(*grid, g,
                                    side == "upper" ? EnvelopeSide::upper : EnvelopeSide::lower);
    if (auto p = output_path(cfg, "field"); !p.empty()) write_field_csv(u, p);
    if (auto p = output_path(cfg, "report"); !p.empty())
        write_json_report({{"command", "extend"},
                           {"side", side},
                           {"boundary_lipschitz", g.lipschitz},
                           {"min", u.min()},
                           {"max", u.max()}},
                          p);
    std::printf("extend: %s envelope, L=%.6g\n", side.c_str(), g.lipschitz);
    return kExitOk;
}

ScalarField load_field(const Grid& grid, const json& cfg) {
    if (!cfg.contains("field_file"))
        throw std::invalid_argument("config: missing 'field_file'");
    return read_field_csv(grid, cfg["field_file"].get<std::string>());
}

// interior values within [min, max] of the boundary values, up to tolerance
ComparisonReport check_max_principle(const ScalarField& u, const Grid& grid, double tol) {
    double bmin = std::numeric_limits<double>::infinity(), bmax = -bmin;
    for (int node : grid.boundary_nodes()) {
        bmin = std::min(bmin, u[node]);
        bmax = std::max(bmax, u[node]);
    }
    ComparisonReport rep;
    rep.property = "max-principle";
    rep.tolerance = tol;
    int worst = -1;
    for (int node : grid.interior_nodes()) {
        double v = std::max(u[node] - bmax, bmin - u[node]);
        if (v > rep.worst_violation) {
            rep.worst_violation = v;
            worst = node;
        }
    }
    if (worst >= 0) rep.worst_nodes.push_back(worst);
    rep.pass = rep.worst_violation <= tol;
    return rep;
}

std::vector<int> box_subdomain(const Grid& grid, const Vec& lo, const Vec& hi) {
    std::vector<int> nodes;
    for (int node : grid.interior_nodes()) {
        Vec x = grid.coords(node);
        bool in = true;
        for (size_t d = 0; d < x.size(); ++d)
            if (x[d] < lo[d] - 1e-12 || x[d] > hi[d] + 1e-12) in = false;
        if (in) nodes.push_back(node);
    }
    return nodes;
}

int run_verify(const json& cfg) {
    auto grid = build_domain(cfg);
    ScalarField u = load_field(*grid, cfg);
    std::vector<std::string> checklist;
    if (cfg.contains("checklist"))
        for (const auto& c : cfg["checklist"]) checklist.push_back(c.get<std::string>());
    else
        checklist = {"max-principle", "cone-comparison"};
    std::uint64_t seed = cfg.value("seed", 1ull);

    const Box& box = grid->box();
    Vec center(static_cast<size_t>(grid->dim()));
    double span = std::numeric_limits<double>::infinity();
    for (int d = 0; d < grid->dim(); ++d) {
        center[d] = 0.5 * (box.lo[d] + box.hi[d]);
        span = std::min(span, box.hi[d] - box.lo[d]);
    }

    json checks = json::array();
    bool all_pass = true;
    for (const auto& name : checklist) {
        std::vector<ComparisonReport> reps;
        if (name == "max-principle") {
            reps.push_back(check_max_principle(u, *grid, cfg.value("max_principle_tol", 1e-7)));
        } else if (name == "cone-comparison") {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            int draws = cfg.value("cone_draws", 10);
            for (int k = 0; k < draws; ++k) {
                Vec apex(center);
                double ang = 2.0 * std::numbers::pi * unif(rng);
                double rad = dist(box.lo, box.hi);  // safely outside the box
                if (grid->dim() == 1)
                    apex[0] += (unif(rng) < 0.5 ? -rad : rad);
                else {
                    apex[0] += rad * std::cos(ang);
                    apex[1] += rad * std::sin(ang);
                }
                double b = -2.0 + 4.0 * unif(rng);
                Vec lo(box.lo), hi(box.hi);
                for (int d = 0; d < grid->dim(); ++d) {
                    double a0 = box.lo[d] + unif(rng) * 0.4 * (box.hi[d] - box.lo[d]);
                    double a1 = box.hi[d] - unif(rng) * 0.4 * (box.hi[d] - box.lo[d]);
                    lo[d] = std::min(a0, a1);
                    hi[d] = std::max(a0, a1);
                }
                auto sub = box_subdomain(*grid, lo, hi);
                if (sub.size() < 8) continue;
                reps.push_back(check_cone_comparison(u, *grid, sub, apex, b, ConeSide::above));
                reps.push_back(check_cone_comparison(u, *grid, sub, apex, b, ConeSide::below));
            }
        } else if (name == "harnack-factor3" || name == "harnack-exponential") {
            double R = cfg.value("harnack_R", 0.4 * span);
            double r = cfg.value("harnack_r", 0.09 * span);
            reps.push_back(check_harnack(u, *grid, center, r, R,
                                         name == "harnack-factor3" ? HarnackForm::factor3
                                                                   : HarnackForm::exponential,
                                         cfg.value("harnack_slack", 0.2)));
        } else if (name == "three-spheres") {
            std::vector<double> radii;
            if (cfg.contains("radii"))
                for (const auto& v : cfg["radii"]) radii.push_back(v.get<double>());
            else
                for (int k = 0; k < 5; ++k) radii.push_back(span * (0.15 + 0.06 * k));
            reps.push_back(sphere_profile(u, *grid, center, radii, ProfileMode::max).convexity);
        } else if (name == "amle") {
            Vec lo(center), hi(center);
            for (int d = 0; d < grid->dim(); ++d) {
                lo[d] -= 0.2 * span;
                hi[d] += 0.2 * span;
            }
            auto sub = box_subdomain(*grid, lo, hi);
            MVConfig mc = mv_config_from(cfg, *grid);
            reps.push_back(check_amle(u, *grid, sub, mc, 20, seed));
        } else {
            throw std::invalid_argument("config: unknown checklist entry '" + name + "'");
        }
        for (const auto& r : reps) {
            all_pass = all_pass && r.pass;
            checks.push_back(report_of(r));
        }
    }
    if (auto p = output_path(cfg, "report"); !p.empty())
        write_json_report({{"command", "verify"}, {"all_pass", all_pass}, {"checks", checks}}, p);
    std::printf("verify: %zu checks, %s\n", checks.size(), all_pass ? "all pass" : "FAILURES");
    return kExitOk;
}

Strategy strategy_from(const std::string& desc, const Grid& grid, const BoundaryData& payoff,
                       double eps, Role role) {
    if (desc == "greedy") return greedy_strategy(grid, payoff, eps, role);
    if (desc == "random") return random_strategy();
    if (desc.rfind("dpp:", 0) == 0) {
        static std::vector<std::unique_ptr<ScalarField>> keep;  // strategies borrow the field
        keep.push_back(std::make_unique<ScalarField>(read_field_csv(grid, desc.substr(4))));
        return dpp_strategy(*keep.back(), grid, eps, role);
    }
    throw std::invalid_argument("config: unknown strategy '" + desc +
                                "' (expected greedy | dpp:<field-file> | random)");
}

int run_tug_of_war(const json& cfg) {
    auto grid = build_domain(cfg);
    auto payoff = build_boundary(*grid, cfg);
    GameConfig gc;
    gc.grid = grid.get();
    gc.eps = require_number(cfg, "eps");
    gc.payoff = payoff;
    if (cfg.contains("max_plies")) gc.max_plies = cfg["max_plies"].get<long>();
    gc.master_seed = cfg.value("seed", 1ull);
    gc.runs = cfg.value("runs", 10000L);
    if (!cfg.contains("start")) throw std::invalid_argument("config: missing 'start' point");
    int start = grid->locate(to_vec(cfg["start"]));
    if (start < 0 || !grid->is_interior(start))
        throw std::invalid_argument("config: start point is not an interior node");

    std::string smax = cfg.value("strategy_max", "greedy");
    std::string smin = cfg.value("strategy_min", "greedy");
    Strategy sx = strategy_from(smax, *grid, payoff, gc.eps, Role::max);
    Strategy sn = strategy_from(smin, *grid, payoff, gc.eps, Role::min);

    if (auto p = output_path(cfg, "transcript"); !p.empty()) {
        std::ofstream os(p);
        if (!os) throw std::runtime_error("cannot open for writing: " + p);
        os << "run,payoff,plies,truncated\n";
        for (long k = 0; k < gc.runs; ++k) {
            PlayResult r = play_game(gc, start, sx, sn, mix_seed(gc.master_seed, k));
            os << k << "," << format_double(r.payoff) << "," << r.plies << ","
               << (r.truncated ? 1 : 0) << "\n";
        }
    }
    GameStats st = estimate_value(gc, start, sx, sn);
    if (auto p = output_path(cfg, "report"); !p.empty())
        write_json_report({{"command", "tug-of-war"},
                           {"runs", st.runs},
                           {"mean", st.mean},
                           {"variance", st.variance},
                           {"ci_half_width", st.ci_half_width},
                           {"mean_plies", st.mean_plies},
                           {"truncation_count", st.truncation_count},
                           {"truncation_warning", st.truncation_warning},
                           {"strategy_max", sx.id},
                           {"strategy_min", sn.id}},
                          p);
    std::printf("tug-of-war: %ld runs, mean %.6g +/- %.3g, %ld truncated\n", st.runs, st.mean,
                st.ci_half_width, st.truncation_count);
    return kExitOk;
}

int run_residual(const json& cfg) {
    auto grid = build_domain(cfg);
    ScalarField u = load_field(*grid, cfg);
    double eps = require_number(cfg, "eps");
    ScalarField r = residual_field(u, *grid, eps);
    double worst = 0.0;
    for (int node : grid->interior_nodes()) worst = std::max(worst, std::abs(r[node]));
    if (auto p = output_path(cfg, "field"); !p.empty()) write_field_csv(r, p);
    if (auto p = output_path(cfg, "report"); !p.empty())
        write_json_report(
            {{"command", "residual"}, {"eps", eps}, {"max_abs_residual", worst}}, p);
    std::printf("residual: eps=%g, max |r| = %.6g\n", eps, worst);
    return kExitOk;
}

}  // namespace

std::unique_ptr<Grid> build_domain(const json& config) {
    if (!config.contains("domain")) throw std::invalid_argument("config: missing 'domain'");
    const json& d = config["domain"];
    std::string type = d.value("type", "rectangle");
    if (!d.contains("lo") || !d.contains("hi"))
        throw std::invalid_argument("config: domain needs 'lo' and 'hi' corner arrays");
    Box box{to_vec(d["lo"]), to_vec(d["hi"])};
    double h = require_number(d, "h");
    Shape shape;
    if (type == "rectangle")
        shape = Shape::rectangle();
    else if (type == "annulus")
        shape = Shape::annulus(require_number(d, "r1"), require_number(d, "r2"));
    else if (type == "lshape")
        shape = Shape::lshape();
    else if (type == "mask")
        shape = Shape::from_mask_file(d.value("mask_file", ""));
    else
        throw std::invalid_argument("config: unknown domain type '" + type + "'");
    return std::make_unique<Grid>(box, h, shape);
}

BoundaryData build_boundary(const Grid& grid, const json& config) {
    if (!config.contains("boundary")) throw std::invalid_argument("config: missing 'boundary'");
    const json& b = config["boundary"];
    bool has_catalog = b.contains("catalog");
    bool has_table = b.contains("table_file");
    if (has_catalog == has_table)
        throw std::invalid_argument(
            "config: boundary needs exactly one of 'catalog' or 'table_file'");
    if (has_table) return read_boundary_table(grid, b["table_file"].get<std::string>());
    const json& c = b["catalog"];
    if (!c.contains("id")) throw std::invalid_argument("config: boundary catalog needs an 'id'");
    CatalogEntry entry = lookup_catalog(c["id"].get<std::string>(), c.value("params", json{}));
    return boundary_trace(grid, [&entry](const Vec& x) { return eval_catalog(entry, x); });
}

int run(const std::string& command, const json& config) {
    if (command == "solve-mv") return run_solve_mv(config);
    if (command == "solve-p") return run_solve_p(config);
    if (command == "sweep-p") return run_sweep_p(config);
    if (command == "sandwich") return run_sandwich(config);
    if (command == "extend") return run_extend(config);
    if (command == "verify") return run_verify(config);
    if (command == "tug-of-war") return run_tug_of_war(config);
    if (command == "residual") return run_residual(config);
    throw std::invalid_argument("unknown command '" + command + "'");
}

}  // namespace infl
