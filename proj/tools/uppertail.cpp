#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uppertail/errors.hpp"
#include "uppertail/families.hpp"
#include "uppertail/report.hpp"

namespace ut = uppertail;

namespace {

struct GraphSource {
    std::string path;
    std::string family;
    int l = 3, r = 2;
    std::string glue_j_path;
    std::string glue_g;
    int copies = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("file", path, "edge-list file");
        cmd->add_option("--family", family,
                        "one of: triangle, cycle-pendant, snail, badnews, fig2, glue");
        cmd->add_option("--l", l, "cycle length for cycle-pendant");
        cmd->add_option("--r", r, "pendant count / badnews parameter / glue copies");
        cmd->add_option("--glue-j", glue_j_path, "edge-list file for J (family glue)");
        cmd->add_option("--glue-g", glue_g, "comma-separated vertex list for G (family glue)");
    }

    ut::Graph load() const {
        if (!path.empty() && !family.empty())
            throw ut::ParseError(0, "give either a file or --family, not both");
        if (!path.empty()) {
            std::ifstream in(path);
            if (!in) throw ut::ParseError(0, "cannot open " + path);
            std::stringstream buf;
            buf << in.rdbuf();
            return ut::graph_from_edge_list(buf.str());
        }
        if (family == "triangle") return ut::Graph(3, {{0, 1}, {1, 2}, {0, 2}});
        if (family == "cycle-pendant") return ut::cycle_pendant(l, r);
        if (family == "snail") return ut::snail();
        if (family == "badnews") return ut::badnews(r);
        if (family == "fig2") return ut::fig2_example();
        if (family == "glue") {
            if (glue_j_path.empty() || glue_g.empty())
                throw ut::ParseError(0, "family glue needs --glue-j and --glue-g");
            std::ifstream in(glue_j_path);
            if (!in) throw ut::ParseError(0, "cannot open " + glue_j_path);
            std::stringstream buf;
            buf << in.rdbuf();
            ut::GlueSpec spec;
            spec.j = ut::graph_from_edge_list(buf.str());
            spec.g_vertices = ut::parse_vertex_set(glue_g, spec.j.order());
            spec.copies = r;
            return ut::glue(spec);
        }
        if (family.empty()) throw ut::ParseError(0, "no graph source: give a file or --family");
        throw ut::ParseError(0, "unknown family '" + family + "'");
    }
};

std::vector<double> parse_grid(const std::string& text) {
    double start = 0, stop = 0;
    int points = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &start, &stop, &points) != 3)
        throw ut::ParseError(0, "grid must be start:stop:points");
    if (!(start > 0) || !(stop >= start) || points < 1)
        throw ut::ParseError(0, "degenerate grid " + text);
    std::vector<double> out;
    if (points == 1) {
        out.push_back(start);
        return out;
    }
    double la = std::log(start), lb = std::log(stop);
    for (int i = 0; i < points; ++i)
        out.push_back(std::exp(la + i * (lb - la) / (points - 1)));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"upper-tail workbench for subgraph counts in G(n,p)"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "full combinatorial report for a graph");
    GraphSource analyze_src;
    analyze_src.attach(analyze);
    std::optional<double> an, ap, anp, aeps;
    analyze->add_option("--n", an, "evaluate exponents at this n");
    analyze->add_option("--p", ap, "edge probability");
    analyze->add_option("--np", anp, "convenience: p = np / n");
    analyze->add_option("--eps", aeps, "epsilon for the exponent report");
    bool assert_ce = false;
    analyze->add_flag("--assert-counterexample", assert_ce,
                      "exit 3 unless the verdict is is_counterexample = true");

    // generate
    auto* generate = app.add_subcommand("generate", "emit a family graph as an edge list");
    GraphSource gen_src;
    gen_src.attach(generate);
    std::string gen_out;
    generate->add_option("-o,--output", gen_out, "output path (default stdout)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "CSV of exponent terms over an np grid");
    GraphSource sweep_src;
    sweep_src.attach(sweep);
    double sn = 0;
    std::string sgrid;
    double seps = 1.0;
    sweep->add_option("--n", sn, "number of vertices")->required();
    sweep->add_option("--np-grid", sgrid, "log-spaced grid start:stop:points")->required();
    sweep->add_option("--eps", seps, "epsilon for plant costs");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo upper-tail estimate");
    GraphSource sim_src;
    sim_src.attach(simulate);
    int mn = 0;
    std::optional<double> mp, mnp;
    double meps = 1.0;
    std::uint64_t mtrials = 1000, mseed = 0;
    simulate->add_option("--n", mn, "host size")->required();
    simulate->add_option("--p", mp, "edge probability");
    simulate->add_option("--np", mnp, "convenience: p = np / n");
    simulate->add_option("--eps", meps, "epsilon");
    simulate->add_option("--trials", mtrials, "number of trials");
    simulate->add_option("--seed", mseed, "master seed");

    // plant
    auto* plant = app.add_subcommand("plant", "plan (and run) a lower-bound construction");
    GraphSource plant_src;
    plant_src.attach(plant);
    std::string kind;
    double pn = 0;
    std::optional<double> pp, pnp;
    double peps = 1.0, pCH = 4.0, pcH = 0.25;
    std::uint64_t pseed = 0;
    bool dry_run = false;
    std::string witness_g;
    std::vector<std::string> witness_covers;
    plant->add_option("--kind", kind, "pendant | general | mixed")->required();
    plant->add_option("--n", pn, "host size")->required();
    plant->add_option("--p", pp, "edge probability");
    plant->add_option("--np", pnp, "convenience: p = np / n");
    plant->add_option("--eps", peps, "epsilon");
    plant->add_option("--seed", pseed, "seed for execution");
    plant->add_option("--C-H", pCH, "constant C_H (general plan)");
    plant->add_option("--c-H", pcH, "constant c_H (general plan)");
    plant->add_option("--witness-g", witness_g, "vertex list of G (general plan)");
    plant->add_option("--witness-cover", witness_covers,
                      "vertex list of one cover (repeatable; general plan)");
    plant->add_flag("--dry-run", dry_run, "print the plan without executing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*analyze) {
            ut::Graph h = analyze_src.load();
            std::optional<double> n = an, p = ap;
            if (anp) {
                if (!an) throw ut::ParseError(0, "--np needs --n");
                p = *anp / *an;
            }
            ut::Json report = ut::analysis_report(h, n, p, aeps);
            std::cout << report.dump(2) << "\n";
            if (assert_ce && !report["counterexample"]["is_counterexample"].get<bool>())
                return 3;
        } else if (*generate) {
            ut::Graph h = gen_src.load();
            std::string text = ut::graph_to_edge_list(h);
            if (gen_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(gen_out);
                out << text;
            }
        } else if (*sweep) {
            ut::Graph h = sweep_src.load();
            ut::SweepOptions opts;
            opts.eps = seps;
            if (sweep_src.family == "cycle-pendant")
                opts.pendant_lr = std::make_pair(sweep_src.l, sweep_src.r);
            if (sweep_src.family == "badnews") opts.mixed_r = sweep_src.r;
            std::cout << ut::sweep_csv(h, sn, parse_grid(sgrid), opts);
        } else if (*simulate) {
            ut::Graph h = sim_src.load();
            double p = mp ? *mp : (mnp ? *mnp / mn : -1);
            if (p < 0) throw ut::ParseError(0, "simulate needs --p or --np");
            ut::TailEstimate est = ut::tail_estimate(h, mn, p, meps, mtrials, mseed);
            std::cout << ut::to_json(est).dump(2) << "\n";
        } else if (*plant) {
            double p = pp ? *pp : (pnp ? *pnp / pn : -1);
            if (p < 0) throw ut::ParseError(0, "plant needs --p or --np");
            ut::Json out;
            if (kind == "pendant") {
                ut::PlantPlan plan = ut::plan_pendant(plant_src.l, plant_src.r, pn, p, peps);
                out["plan"] = ut::to_json(plan, plan.h.order());
                if (!dry_run)
                    out["outcome"] = ut::to_json(ut::execute_pendant(plan, pseed));
            } else if (kind == "general") {
                ut::Graph h = plant_src.load();
                ut::VertexSet g = 0;
                std::vector<ut::VertexSet> covers;
                if (!witness_g.empty()) {
                    g = ut::parse_vertex_set(witness_g, h.order());
                    for (const auto& c : witness_covers)
                        covers.push_back(ut::parse_vertex_set(c, h.order()));
                } else {
                    ut::CounterexampleVerdict v = ut::counterexample_check(h);
                    if (!v.is_counterexample)
                        throw ut::ParseError(
                            0, "no counterexample witness; give --witness-g/--witness-cover");
                    g = v.witness_G;
                    covers = v.witness_covers;
                }
                ut::PlantPlan plan = ut::plan_general(h, g, covers, pn, p, peps, pCH, pcH);
                out["plan"] = ut::to_json(plan, h.order());
                if (!dry_run)
                    out["outcome"] = ut::to_json(ut::execute_general(plan, pseed));
            } else if (kind == "mixed") {
                if (!dry_run) throw ut::ParseError(0, "--dry-run is mandatory for kind=mixed");
                ut::PlantPlan plan = ut::plan_mixed(plant_src.r, pn, p, peps);
                out["plan"] = ut::to_json(plan, plan.h.order());
            } else {
                throw ut::ParseError(0, "unknown plant kind '" + kind + "'");
            }
            std::cout << out.dump(2) << "\n";
        }
    } catch (const ut::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ut::FeasibilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
