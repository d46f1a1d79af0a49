#ifndef EPISOURCE_CLI_HPP
#define EPISOURCE_CLI_HPP

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "episource/error.hpp"
#include "episource/experiment.hpp"
#include "episource/msep.hpp"
#include "episource/oracle.hpp"

namespace episource {

namespace cli_detail {

inline Graph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open graph file: " + path);
    return load_edge_list(in);
}

inline NodeSet load_infected_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open infected file: " + path);
    NodeSet out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        try {
            out.push_back(static_cast<node>(std::stoul(line)));
        } catch (const std::exception&) {
            throw ParseError("infected list: malformed line " +
                             std::to_string(line_no));
        }
    }
    canonicalize(out);
    return out;
}

inline NodeSet parse_source_list(const std::string& text) {
    NodeSet out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(static_cast<node>(std::stoul(item)));
    canonicalize(out);
    if (out.empty()) throw ArgumentError("empty source list");
    return out;
}

// Routes payload either to --out or the caller's stream.
inline void emit(const std::string& payload, const std::string& out_path,
                 std::ostream& out) {
    if (out_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw ArgumentError("cannot open output file: " + out_path);
    f << payload;
}

inline nlohmann::json estimate_json(const SourceEstimate& est) {
    return {{"algo", est.algo},
            {"nodes", est.nodes},
            {"log_score", est.log_score}};
}

inline nlohmann::json msep_json(const MsepResult& res,
                                const std::vector<node>& to_parent) {
    auto remap = [&](node v) {
        return to_parent.empty() ? v : to_parent[v];
    };
    nlohmann::json regions = nlohmann::json::array();
    for (const auto& reg : res.regions.regions()) {
        nlohmann::json r = nlohmann::json::array();
        for (node v : reg) r.push_back(remap(v));
        regions.push_back(r);
    }
    nlohmann::json sources = nlohmann::json::array();
    for (node s : res.sources) sources.push_back(remap(s));
    nlohmann::json merges = nlohmann::json::array();
    for (const auto& ev : res.merge_log)
        merges.push_back({{"kept", remap(ev.kept)},
                          {"dropped", {remap(ev.dropped_a),
                                       remap(ev.dropped_b)}},
                          {"pair_distance", ev.pair_distance},
                          {"k_after", ev.k_after}});
    return {{"sources", sources},
            {"regions", regions},
            {"k_final", res.k_final},
            {"merge_log", merges}};
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    cfg.family = j.value("family", cfg.family);
    cfg.degree = j.value("degree", cfg.degree);
    cfg.depth = j.value("depth", cfg.depth);
    cfg.geo.alpha = j.value("alpha", cfg.geo.alpha);
    cfg.geo.b = j.value("b", cfg.geo.b);
    cfg.geo.c = j.value("c", cfg.geo.c);
    cfg.geo.d_min = j.value("d_min", cfg.geo.d_min);
    cfg.geo.d_max = j.value("d_max", cfg.geo.d_max);
    cfg.geo.depth = j.value("geo_depth", cfg.geo.depth);
    cfg.delta = j.value("delta", cfg.delta);
    cfg.interior_depth = j.value("interior_depth", cfg.interior_depth);
    cfg.n = j.value("n", cfg.n);
    cfg.ws_k = j.value("ws_k", cfg.ws_k);
    cfg.ws_p = j.value("ws_p", cfg.ws_p);
    cfg.k_true = j.value("k_true", cfg.k_true);
    cfg.stop_n = j.value("stop_n", cfg.stop_n);
    cfg.runs = j.value("runs", cfg.runs);
    cfg.k_max = j.value("k_max", cfg.k_max);
    cfg.tau = j.value("tau", cfg.tau);
    cfg.separation = j.value("separation", cfg.separation);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("algorithms"))
        cfg.algorithms = j["algorithms"].get<std::vector<std::string>>();
    cfg.jobs = j.value("jobs", cfg.jobs);
    return cfg;
}

inline nlohmann::json report_json(const ExperimentReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json row = {{"run", r.run},
                              {"family", r.family},
                              {"k_true", r.k_true},
                              {"k_est", r.k_est},
                              {"algo", r.algo},
                              {"delta_eta0", r.delta_eta0},
                              {"delta_etadiam", r.delta_etadiam},
                              {"min_cover", r.min_cover},
                              {"diam_gn", r.diam_gn},
                              {"ms_elapsed", r.ms_elapsed}};
        if (!r.error.empty()) row["error"] = r.error;
        rows.push_back(row);
    }
    nlohmann::json aggs = nlohmann::json::array();
    for (const auto& a : report.aggregates)
        aggs.push_back({{"algo", a.algo},
                        {"rows", a.rows},
                        {"count_accuracy", a.count_accuracy},
                        {"mean_delta_eta0", a.mean_delta_eta0},
                        {"mean_delta_etadiam", a.mean_delta_etadiam},
                        {"mean_cover", a.mean_cover},
                        {"mean_diam", a.mean_diam}});
    return {{"rows", rows}, {"aggregate", aggs}};
}

}  // namespace cli_detail

// Full command dispatcher; returns the process exit code.
// 0 = success, 1 = usage error, 2 = runtime/structural error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
    CLI::App app{"epidemic source inference toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic graph");
    std::string g_family;
    int g_degree = 3, g_depth = 5, g_dmin = 3, g_dmax = 3, g_maxch = 0;
    int g_wsk = 4;
    double g_alpha = 1.0, g_b = 2.0, g_c = 3.0, g_wsp = 0.1;
    std::size_t g_n = 100;
    std::uint64_t g_seed = 0;
    std::string g_out;
    gen->add_option("--family", g_family,
                    "regular-tree | geometric-tree | small-world")
        ->required();
    gen->add_option("--degree", g_degree, "regular tree: internal degree");
    gen->add_option("--depth", g_depth, "tree depth");
    gen->add_option("--alpha", g_alpha, "geometric growth exponent");
    gen->add_option("--b", g_b, "geometric growth lower constant");
    gen->add_option("--c", g_c, "geometric growth upper constant");
    gen->add_option("--d-min", g_dmin, "geometric root degree lower bound");
    gen->add_option("--d-max", g_dmax, "geometric root degree upper bound");
    gen->add_option("--max-children", g_maxch,
                    "geometric per-node child cap (0 = none)");
    gen->add_option("--n", g_n, "small-world node count");
    gen->add_option("--k", g_wsk, "small-world nearest-neighbor count");
    gen->add_option("--p", g_wsp, "small-world rewiring probability");
    gen->add_option("--seed", g_seed, "generator seed");
    gen->add_option("--out", g_out, "write edge list here (default stdout)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "run an SI spreading simulation");
    std::string s_graph, s_sources, s_out;
    std::size_t s_k = 1, s_stop = 0;
    int s_tau = 2;
    std::uint64_t s_seed = 0;
    sim->add_option("--graph", s_graph, "edge list file")->required();
    sim->add_option("--sources", s_sources,
                    "comma-separated source ids (omit to sample)");
    sim->add_option("--k", s_k, "number of sources to sample");
    sim->add_option("--tau", s_tau, "minimum pairwise source separation");
    sim->add_option("--stop-n", s_stop, "stop after this many infections")
        ->required();
    sim->add_option("--seed", s_seed, "simulation seed");
    sim->add_option("--out", s_out, "write JSON here (default stdout)");

    // estimate
    auto* est = app.add_subcommand("estimate", "infer sources from a graph");
    std::string e_graph, e_infected, e_algo, e_out;
    std::size_t e_k = 1, e_kmax = 3;
    int e_tau = 2, e_dmin = 3, e_dmax = 3;
    double e_delta = 1.0, e_alpha = 1.0, e_b = 1.0, e_c = 1.0;
    std::uint64_t e_seed = 0;
    est->add_option("--graph", e_graph, "edge list file")->required();
    est->add_option("--infected", e_infected,
                    "file of infected node ids, one per line");
    est->add_option("--algo", e_algo,
                    "sse | sse-bfs | tse | geo-tse | nsse | msep | msep-bfs")
        ->required();
    est->add_option("--k", e_k, "nsse: number of sources");
    est->add_option("--k-max", e_kmax, "msep: starting region count");
    est->add_option("--tau", e_tau, "msep: merge distance threshold");
    est->add_option("--delta", e_delta, "geo-tse: delta parameter");
    est->add_option("--alpha", e_alpha, "geo-tse: growth exponent");
    est->add_option("--b", e_b, "geo-tse: growth lower constant");
    est->add_option("--c", e_c, "geo-tse: growth upper constant");
    est->add_option("--d-min", e_dmin, "geo-tse: source degree lower bound");
    est->add_option("--d-max", e_dmax, "geo-tse: source degree upper bound");
    est->add_option("--seed", e_seed, "seed for randomized steps");
    est->add_option("--out", e_out, "write JSON here (default stdout)");

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "Monte Carlo experiment sweep");
    std::string b_config, b_format = "csv", b_out;
    std::optional<std::uint64_t> b_seed;
    std::optional<std::size_t> b_jobs, b_runs;
    bench->add_option("--config", b_config, "experiment config JSON file");
    bench->add_option("--seed", b_seed, "override master seed");
    bench->add_option("--runs", b_runs, "override run count");
    bench->add_option("--jobs", b_jobs, "parallel run workers");
    bench->add_option("--format", b_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    bench->add_option("--out", b_out, "write report here (default stdout)");

    // oracle
    auto* orc = app.add_subcommand("oracle", "run a built-in correctness check");
    std::string o_check;
    orc->add_option("--check", o_check, "lemma1 | lemma2 | theorem1 | figure1")
        ->required()
        ->check(CLI::IsMember({"lemma1", "lemma2", "theorem1", "figure1"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << '\n' << app.help();
        return 1;
    }

    try {
        if (gen->parsed()) {
            Graph g;
            if (g_family == "regular-tree") {
                g = gen_regular_tree(g_degree, g_depth);
            } else if (g_family == "geometric-tree") {
                GeoTreeParams p{g_alpha, g_b, g_c, g_dmin, g_dmax,
                                g_depth, g_maxch, g_seed};
                g = gen_geometric_tree(p);
                auto audit =
                    audit_geometric(g, 0, g_alpha, g_b, g_c, g_depth);
                if (!audit.ok)
                    throw GenerationError("geometric audit failed: " +
                                          audit.detail);
            } else if (g_family == "small-world") {
                g = gen_small_world(g_n, g_wsk, g_wsp, g_seed);
            } else {
                throw ArgumentError("unknown family: " + g_family);
            }
            std::ostringstream payload;
            save_edge_list(g, payload);
            cli_detail::emit(payload.str(), g_out, out);
            return 0;
        }

        if (sim->parsed()) {
            Graph g = cli_detail::load_graph_file(s_graph);
            NodeSet sources =
                s_sources.empty()
                    ? pick_sources(g, PlacementParams{s_k, s_tau, 10000,
                                                      derive_seed(s_seed, 1)})
                    : cli_detail::parse_source_list(s_sources);
            auto outcome =
                simulate_si(g, sources, s_stop, derive_seed(s_seed, 2));
            nlohmann::json parent = nlohmann::json::object();
            for (node v : outcome.infected_order)
                if (auto it = outcome.parent.find(v);
                    it != outcome.parent.end())
                    parent[std::to_string(v)] = it->second;
            nlohmann::json j = {{"sources", outcome.sources},
                                {"order", outcome.infected_order},
                                {"parent", parent},
                                {"elapsed", outcome.elapsed}};
            cli_detail::emit(j.dump(2) + "\n", s_out, out);
            return 0;
        }

        if (est->parsed()) {
            Graph full = cli_detail::load_graph_file(e_graph);
            InducedSubgraph sub;
            const Graph* g = &full;
            std::vector<node> to_parent;
            if (!e_infected.empty()) {
                NodeSet infected = cli_detail::load_infected_file(e_infected);
                sub = induced_subgraph(full, infected);
                g = &sub.graph;
                to_parent = sub.to_parent;
            }
            auto remap = [&](NodeSet nodes) {
                if (to_parent.empty()) return nodes;
                for (auto& v : nodes) v = to_parent[v];
                canonicalize(nodes);
                return nodes;
            };
            nlohmann::json j;
            if (e_algo == "msep" || e_algo == "msep-bfs") {
                MsepConfig mc;
                mc.k_max = e_kmax;
                mc.tau = e_tau;
                mc.seed = e_seed;
                MsepResult res =
                    e_algo == "msep" ? msep(*g, mc) : msep_bfs(*g, mc);
                j = cli_detail::msep_json(res, to_parent);
            } else {
                SourceEstimate se;
                if (e_algo == "sse") {
                    if (!g->is_tree())
                        throw StructureError("input is not a tree");
                    se = sse_tree(*g);
                } else if (e_algo == "sse-bfs") {
                    se = sse_bfs(*g);
                } else if (e_algo == "tse") {
                    se = tse(*g);
                } else if (e_algo == "geo-tse") {
                    GeoParams gp{e_alpha, e_b, e_c, e_dmin, e_dmax, e_delta};
                    se = geometric_tse(*g, gp);
                } else if (e_algo == "nsse") {
                    se = nsse(*g, e_k);
                } else {
                    throw ArgumentError("unknown algorithm: " + e_algo);
                }
                se.nodes = remap(se.nodes);
                j = cli_detail::estimate_json(se);
            }
            cli_detail::emit(j.dump(2) + "\n", e_out, out);
            return 0;
        }

        if (bench->parsed()) {
            ExperimentConfig cfg;
            if (!b_config.empty()) {
                std::ifstream in(b_config);
                if (!in)
                    throw ArgumentError("cannot open config file: " + b_config);
                cfg = cli_detail::config_from_json(nlohmann::json::parse(in));
            }
            if (b_seed) cfg.seed = *b_seed;
            if (b_runs) cfg.runs = *b_runs;
            if (b_jobs) cfg.jobs = *b_jobs;
            auto report = run_experiment(cfg);
            if (b_format == "csv") {
                std::ostringstream payload;
                write_report_csv(report, payload);
                cli_detail::emit(payload.str(), b_out, out);
            } else {
                cli_detail::emit(cli_detail::report_json(report).dump(2) + "\n",
                                 b_out, out);
            }
            return 0;
        }

        // oracle
        OracleReport rep = run_oracle(o_check);
        out << rep.check << ": " << rep.pass << " passed, " << rep.fail
            << " failed\n";
        if (!rep.ok()) {
            err << rep.check << " first failure: " << rep.first_failure
                << '\n';
            return 2;
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace episource

#endif
