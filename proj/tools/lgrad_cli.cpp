// Command-line front end: wires the norm/domain/solver modules into
// reproducible experiments driven by a single JSON config.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "lgrad/chord_solver.hpp"
#include "lgrad/counterexamples.hpp"
#include "lgrad/gamma.hpp"
#include "lgrad/grid_oracle.hpp"
#include "lgrad/io.hpp"
#include "lgrad/svg.hpp"

using namespace lgrad;
namespace fs = std::filesystem;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    int seed = 0;
    int levels = 0;  // 0: take from config (default 101)
    int grid = 0;    // 0: take from config (default 256)
};

json dump_report(const fs::path& out, const std::string& name, const json& j) {
    std::ofstream f(out / name, std::ios::binary);
    f << j.dump(2) << '\n';
    return j;
}

int effective_levels(const CommonArgs& a, const json& solver) {
    if (a.levels > 0) return a.levels;
    return solver.value("levels", 101);
}

int effective_grid(const CommonArgs& a, const json& solver) {
    if (a.grid > 0) return a.grid;
    return solver.value("grid", 256);
}

std::vector<double> schedule_from(const json& solver) {
    std::vector<double> sched;
    if (solver.contains("eps_schedule"))
        for (const auto& e : solver.at("eps_schedule")) sched.push_back(e.get<double>());
    if (sched.empty())
        for (int k = 0; k <= 10; ++k) sched.push_back(std::pow(2.0, -k));
    return sched;
}

LevelSetFamily run_solver(const Experiment& ex, const CommonArgs& args, json* report) {
    SolveOptions opts;
    opts.level_count = effective_levels(args, ex.solver);
    if (ex.norm->is_strictly_convex()) {
        if (report) (*report)["mode"] = "strict";
        return solve_strict(*ex.norm, *ex.domain, *ex.data, opts);
    }
    auto sched = schedule_from(ex.solver);
    auto sol = solve_regularized(*ex.norm, *ex.domain, *ex.data, sched, opts);
    if (report) {
        (*report)["mode"] = "regularized";
        (*report)["eps"] = sol.report.eps;
        (*report)["sup_distances"] = sol.report.sup_distances;
        (*report)["cauchy"] = sol.report.cauchy;
    }
    return std::move(sol.family);
}

json energy_json(const EnergyReport& e) {
    return json{{"interior", e.interior}, {"boundary", e.boundary}, {"total", e.total()}};
}

int cmd_norm_info(const Experiment& ex, const CommonArgs& args) {
    const AnisotropyNorm& n = *ex.norm;
    json j;
    j["form"] = n.form_name();
    j["lambda"] = n.lambda_lower();
    j["gamma"] = n.gamma_upper();
    j["strictly_convex"] = n.is_strictly_convex();
    json facets = json::array();
    for (const auto& f : n.facets()) {
        facets.push_back({{"a", {f.a.x, f.a.y}},
                          {"b", {f.b.x, f.b.y}},
                          {"arc_begin", f.arc_begin},
                          {"arc_end", f.arc_end}});
    }
    j["facets"] = facets;
    j["polar"] = norm_to_json(n.polar());
    std::cout << j.dump(2) << "\n";
    dump_report(args.out_dir, "norm_info.json", j);
    return 0;
}

int cmd_solve(const Experiment& ex, const CommonArgs& args) {
    json rep;
    LevelSetFamily fam = run_solver(ex, args, &rep);
    fs::path out(args.out_dir);
    write_raster_csv((out / "solution.csv").string(), fam, effective_grid(args, ex.solver));
    write_levels_json((out / "levels.json").string(), fam);
    render_family((out / "solution.svg").string(), fam);
    auto tr = trace_check(fam, *ex.domain, *ex.data);
    rep["trace_max_deviation"] = tr.max_deviation;
    rep["energy"] = energy_json(relaxed_energy(*ex.norm, *ex.domain, fam, *ex.data));
    dump_report(out, "solve_report.json", rep);
    return 0;
}

int cmd_oracle(const Experiment& ex, const CommonArgs& args) {
    OracleOptions opts;
    opts.resolution = effective_grid(args, ex.solver);
    opts.max_iters = ex.solver.value("iters", 3000);
    opts.tol = ex.solver.value("tol", 1e-3);
    opts.seed = args.seed;
    auto res = minimize_tv(*ex.norm, *ex.domain, *ex.data, opts);
    fs::path out(args.out_dir);
    write_raster_csv((out / "oracle.csv").string(), res.u);
    write_energy_trace_csv((out / "energy_trace.csv").string(), res);
    json rep{{"iterations", res.iterations},
             {"converged", res.converged},
             {"final_energy", res.final_energy}};
    dump_report(out, "oracle_report.json", rep);
    return 0;
}

int cmd_compare(const Experiment& ex, const CommonArgs& args) {
    json rep;
    LevelSetFamily fam = run_solver(ex, args, &rep);
    OracleOptions opts;
    opts.resolution = effective_grid(args, ex.solver);
    opts.max_iters = ex.solver.value("iters", 3000);
    opts.tol = ex.solver.value("tol", 1e-3);
    opts.seed = args.seed;
    auto res = minimize_tv(*ex.norm, *ex.domain, *ex.data, opts);
    auto cmp = compare(fam, res.u, *ex.norm, *ex.data);
    rep["l1_discrepancy"] = cmp.l1;
    rep["sup_discrepancy"] = cmp.sup;
    rep["area"] = cmp.area;
    rep["energy_family"] = energy_json(cmp.energy_family);
    rep["energy_grid"] = energy_json(cmp.energy_grid);
    std::cout << rep.dump(2) << "\n";
    dump_report(args.out_dir, "compare_report.json", rep);
    return 0;
}

int cmd_perturb(const Experiment& ex, const CommonArgs& args) {
    auto facets = ex.norm->facets();
    if (facets.empty()) throw std::runtime_error("perturb: the norm has no facet");
    const Facet& fa = facets.front();
    Vec2 nu = unit_dir(fa.arc_mid());
    Vec2 dir = nu.rot270();
    Line line{ex.domain->centroid(), dir};
    auto chord = ex.domain->chord_intersections(line);
    if (chord.size() != 2) throw std::runtime_error("perturb: degenerate central chord");
    PerturbationShape tri;
    auto chain = facet_perturbation(*ex.norm, *ex.domain, fa, chord[0], chord[1], tri);
    json rep;
    rep["chord_length"] = jensen_lower_bound(*ex.norm, chord[0], chord[1]);
    rep["chain_length"] = anisotropic_length(*ex.norm, chain);
    json pts = json::array();
    for (const auto& p : chain.vertices()) pts.push_back({p.x, p.y});
    rep["chain"] = pts;
    std::cout << rep.dump(2) << "\n";
    dump_report(args.out_dir, "perturb_report.json", rep);

    double R = ex.domain->diameter() / 2;
    SvgWriter svg(-R, R, -R, R);
    svg.polyline(ex.domain->boundary(), "#222222", 3.0, true);
    svg.polyline({chord[0], chord[1]}, "#888888", 1.5);
    svg.polyline(chain.vertices(), "#cc2222", 1.5);
    svg.write((fs::path(args.out_dir) / "perturb.svg").string());
    return 0;
}

int cmd_pathology(const Experiment& ex, const CommonArgs& args, const std::string& which) {
    fs::path out(args.out_dir);
    int levels = effective_levels(args, ex.solver);
    json rep;
    if (which == "nonunique") {
        auto pair = nonunique_pair(*ex.norm, *ex.domain, levels);
        rep["energy_u"] = energy_json(pair.energy_u);
        rep["energy_tilde"] = energy_json(pair.energy_tilde);
        rep["max_pointwise_diff"] = pair.max_pointwise_diff;
        render_family((out / "nonunique.svg").string(), pair.u, &pair.u_tilde);
    } else if (which == "non-w11") {
        auto res = non_w11_minimizer(*ex.norm, *ex.domain, 0.2, 0.3, levels);
        rep["band_width"] = res.band_width;
        rep["jump"] = res.jump_measured;
        rep["energy_base"] = energy_json(res.energy_base);
        rep["energy_perturbed"] = energy_json(res.energy_pert);
        render_family((out / "non_w11.svg").string(), res.baseline, &res.family_view);
    } else if (which == "non-sbv") {
        auto res = non_sbv_minimizer(*ex.norm, *ex.domain, 12, 0.4, levels);
        rep["depth"] = res.depth;
        rep["energy_base"] = energy_json(res.energy_base);
        rep["energy_perturbed"] = energy_json(res.energy_pert);
        render_family((out / "non_sbv.svg").string(), res.baseline, &res.family_view);
    } else if (which == "vanishing-l1") {
        auto res = vanishing_l1_family(*ex.norm, *ex.domain, 5, levels);
        rep["l1_norms"] = res.l1_norms;
        json es = json::array();
        for (const auto& e : res.energies) es.push_back(energy_json(e));
        rep["energies"] = es;
        render_family((out / "vanishing_l1.svg").string(), res.family_views.front(),
                      &res.family_views.back());
    } else {
        throw std::runtime_error("pathology: unknown kind '" + which +
                                 "' (expected nonunique | non-w11 | non-sbv | vanishing-l1)");
    }
    std::cout << rep.dump(2) << "\n";
    dump_report(out, "pathology_report.json", rep);
    return 0;
}

int cmd_barrier(const Experiment& ex, const CommonArgs& args) {
    auto res = barrier_check(*ex.norm, *ex.domain);
    json rep;
    rep["verdict"] = res.verdict == BarrierResult::Verdict::Satisfied   ? "satisfied"
                     : res.verdict == BarrierResult::Verdict::Violated ? "violated"
                                                                       : "indeterminate";
    rep["reason"] = res.reason;
    if (res.witness) rep["witness"] = {res.witness->x, res.witness->y};
    if (!res.witness_wedge.empty()) {
        json w = json::array();
        for (const auto& p : res.witness_wedge) w.push_back({p.x, p.y});
        rep["wedge"] = w;
    }
    std::cout << rep.dump(2) << "\n";
    dump_report(args.out_dir, "barrier_report.json", rep);
    return 0;
}

int cmd_gamma(const Experiment& ex, const CommonArgs& args, const std::string& which) {
    fs::path out(args.out_dir);
    int levels = effective_levels(args, ex.solver);
    auto sched = schedule_from(ex.solver);
    json rep;
    if (which == "bound") {
        auto lin = linear_solution(*ex.domain, {1, 0}, levels);
        auto b = gamma_bound_check(*ex.norm, ex.norm->regularized(0.25), *ex.domain, lin.family,
                                   *ex.data);
        rep = {{"lhs", b.lhs}, {"rhs", b.rhs}, {"sup_dist", b.sup_dist}, {"holds", b.holds}};
    } else if (which == "liminf") {
        auto r = liminf_experiment(*ex.norm, *ex.domain, *ex.data, sched, {levels});
        rep = {{"eps", r.eps},
               {"f_eps", r.f_eps},
               {"f_limit", r.f_limit},
               {"margin", r.margin},
               {"holds", r.holds}};
        std::ofstream csv(out / "liminf.csv", std::ios::binary);
        csv << "eps,f_eps\n";
        for (std::size_t i = 0; i < r.eps.size(); ++i)
            csv << format_double(r.eps[i]) << ',' << format_double(r.f_eps[i]) << '\n';
    } else if (which == "recovery") {
        json solver_rep;
        LevelSetFamily fam = run_solver(ex, args, &solver_rep);
        auto r = recovery_experiment(*ex.norm, *ex.domain, fam, *ex.data, sched);
        rep = {{"f_base", r.f_base},
               {"f_l2", r.f_l2},
               {"monotone", r.monotone},
               {"within_bound", r.within_bound},
               {"slope_rel_err", r.slope_rel_err}};
        std::ofstream csv(out / "recovery.csv", std::ios::binary);
        csv << "eps,f_eps,diff,bound\n";
        for (const auto& row : r.rows)
            csv << format_double(row.eps) << ',' << format_double(row.f_eps) << ','
                << format_double(row.diff) << ',' << format_double(row.bound) << '\n';
    } else if (which == "pointwise") {
        std::vector<AnisotropyNorm> seq;
        for (int n = 1; n <= 8; ++n) seq.push_back(ex.norm->regularized(1.0 / n));
        auto r = pointwise_uniform_check(seq, *ex.norm, 64);
        rep = {{"sampled_max", r.sampled_max},
               {"certified_sup", r.certified_sup},
               {"true_sup", r.true_sup},
               {"max_slack", r.max_slack}};
    } else {
        throw std::runtime_error("gamma: unknown kind '" + which +
                                 "' (expected bound | liminf | recovery | pointwise)");
    }
    std::cout << rep.dump(2) << "\n";
    dump_report(out, "gamma_report.json", rep);
    return 0;
}

int cmd_regularity(const Experiment& ex, const CommonArgs& args) {
    json rep;
    LevelSetFamily fam = run_solver(ex, args, &rep);
    double a = ex.domain->uniform_convexity_coefficient();
    rep["parabola_coeff"] = a;
    rep["regularity_constant"] = ex.domain->regularity_constant();
    bool beta_mode = ex.domain->beta().has_value();
    auto mr = modulus_check(fam, *ex.domain, ex.data->modulus(), beta_mode, 100000,
                            static_cast<unsigned>(args.seed + 1));
    rep["max_ratio"] = mr.max_ratio;
    rep["exponent"] = mr.exponent;
    std::cout << rep.dump(2) << "\n";
    dump_report(args.out_dir, "regularity_report.json", rep);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar anisotropic least-gradient toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string pathology_kind = "nonunique";
    std::string gamma_kind = "bound";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", args.config_path, "experiment config (JSON)")->required();
        cmd->add_option("--out", args.out_dir, "output directory (default: .)");
        cmd->add_option("--seed", args.seed, "seed for randomized suites / oracle restarts");
        cmd->add_option("--levels", args.levels, "override solver level count (default 101)");
        cmd->add_option("--grid", args.grid, "override raster resolution (default 256)");
    };

    auto* c_norm = app.add_subcommand("norm-info", "facets, ellipticity bounds and polar");
    add_common(c_norm);
    auto* c_solve = app.add_subcommand("solve", "chord solver: CSV raster + levels JSON + SVG");
    add_common(c_solve);
    auto* c_oracle = app.add_subcommand("oracle", "grid minimization: CSV raster + energy trace");
    add_common(c_oracle);
    auto* c_compare = app.add_subcommand("compare", "chord solver vs grid oracle report");
    add_common(c_compare);
    auto* c_perturb = app.add_subcommand("perturb", "equal-length facet perturbation demo");
    add_common(c_perturb);
    auto* c_path =
        app.add_subcommand("pathology", "nonunique | non-w11 | non-sbv | vanishing-l1");
    c_path->add_option("kind", pathology_kind, "construction to run")->required();
    add_common(c_path);
    auto* c_barrier = app.add_subcommand("barrier", "barrier condition classification");
    add_common(c_barrier);
    auto* c_gamma = app.add_subcommand("gamma", "bound | liminf | recovery | pointwise");
    c_gamma->add_option("kind", gamma_kind, "experiment to run")->required();
    add_common(c_gamma);
    auto* c_reg = app.add_subcommand("regularity", "modulus-of-continuity report");
    add_common(c_reg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!fs::exists(args.config_path)) {
            std::cerr << "error: config file not found: " << args.config_path << "\n";
            return 2;
        }
        json config;
        try {
            config = read_json_file(args.config_path);
        } catch (const std::exception& e) {
            std::cerr << "error: invalid config: " << e.what() << "\n";
            return 2;
        }
        fs::create_directories(args.out_dir);
        Experiment ex = load_experiment(config);

        auto need = [&](bool ok, const char* what) {
            if (!ok)
                throw std::runtime_error(std::string("config is missing the ") + what +
                                         " section");
        };
        need(ex.norm.has_value(), "norm");
        if (app.got_subcommand(c_norm)) return cmd_norm_info(ex, args);
        if (app.got_subcommand(c_barrier)) return cmd_barrier(ex, args);
        if (app.got_subcommand(c_perturb)) return cmd_perturb(ex, args);
        if (app.got_subcommand(c_path)) return cmd_pathology(ex, args, pathology_kind);
        need(ex.data.has_value(), "boundary_data");
        if (app.got_subcommand(c_solve)) return cmd_solve(ex, args);
        if (app.got_subcommand(c_oracle)) return cmd_oracle(ex, args);
        if (app.got_subcommand(c_compare)) return cmd_compare(ex, args);
        if (app.got_subcommand(c_gamma)) return cmd_gamma(ex, args, gamma_kind);
        if (app.got_subcommand(c_reg)) return cmd_regularity(ex, args);
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
