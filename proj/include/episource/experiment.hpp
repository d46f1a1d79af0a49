#ifndef EPISOURCE_EXPERIMENT_HPP
#define EPISOURCE_EXPERIMENT_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "episource/error.hpp"
#include "episource/estimators.hpp"
#include "episource/generators.hpp"
#include "episource/graph.hpp"
#include "episource/metrics.hpp"
#include "episource/msep.hpp"
#include "episource/partition.hpp"
#include "episource/rng.hpp"
#include "episource/simulate.hpp"

namespace episource {

struct PlantedInstance {
    Graph graph;
    NodeSet sources;
};

// Multi-source benchmark instance: sources joined by paths of `separation`
// hops, polynomially growing subtrees hanging off the sources (degree drawn
// in [d_min, d_max], minus path edges) and one shallower subtree off every
// path interior node so the whole tree keeps the growth profile.
inline PlantedInstance gen_geometric_instance(const GeoTreeParams& p,
                                              std::size_t k, int separation,
                                              int interior_depth,
                                              std::uint64_t seed) {
    p.validate();
    if (k < 1) throw ArgumentError("geometric instance: k must be >= 1");
    if (k > 1 && separation < 2)
        throw ArgumentError("geometric instance: separation must be >= 2");
    Rng rng(seed);
    detail::GraphBuilder gb;
    std::vector<node> srcs;
    for (std::size_t i = 0; i < k; ++i) {
        node s;
        if (i == 0) {
            s = gb.fresh();
        } else {
            node cur = srcs.back();
            for (int step = 1; step <= separation; ++step) {
                node w = gb.fresh();
                gb.edge(cur, w);
                if (step < separation && interior_depth >= 2)
                    detail::append_geometric_subtree(gb, w, interior_depth,
                                                     p.alpha, p.b, p.c, rng,
                                                     p.max_children);
                cur = w;
            }
            s = cur;
        }
        srcs.push_back(s);
    }
    for (std::size_t i = 0; i < k; ++i) {
        const int path_edges =
            k == 1 ? 0 : (i == 0 || i + 1 == k ? 1 : 2);
        const int deg = static_cast<int>(rng.range(p.d_min, p.d_max));
        for (int j = 0; j < deg - path_edges; ++j)
            detail::append_geometric_subtree(gb, srcs[i], p.depth, p.alpha,
                                             p.b, p.c, rng, p.max_children);
    }
    PlantedInstance out{gb.build(), NodeSet(srcs.begin(), srcs.end())};
    canonicalize(out.sources);
    return out;
}

struct ExperimentConfig {
    std::string family = "regular-tree";  // regular-tree | geometric-tree |
                                          // small-world
    // regular-tree
    int degree = 3;
    int depth = 12;
    // geometric-tree (root-degree bounds double as source-degree bounds)
    GeoTreeParams geo{1.0, 2.0, 2.0, 6, 8, 12, 0, 0};
    double delta = 0.8;
    int interior_depth = 2;
    // small-world
    std::size_t n = 1000;
    int ws_k = 4;
    double ws_p = 0.1;

    std::size_t k_true = 1;
    std::size_t stop_n = 500;
    std::size_t runs = 1;
    std::size_t k_max = 3;
    int tau = 9;              // MSEP merge threshold
    int separation = 24;      // pairwise source distance (hops)
    std::uint64_t seed = 0;
    std::vector<std::string> algorithms{"msep", "nsse-known", "nsse-guess"};
    std::size_t jobs = 1;

    void validate() const {
        if (family != "regular-tree" && family != "geometric-tree" &&
            family != "small-world")
            throw ArgumentError("experiment: unknown family " + family);
        if (runs < 1) throw ArgumentError("experiment: runs must be >= 1");
        if (k_true < 1 || stop_n < k_true)
            throw ArgumentError("experiment: need stop_n >= k_true >= 1");
        if (k_max < 1) throw ArgumentError("experiment: k_max must be >= 1");
        if (algorithms.empty())
            throw ArgumentError("experiment: no algorithms selected");
        for (const auto& a : algorithms)
            if (a != "msep" && a != "msep-bfs" && a != "nsse-known" &&
                a != "nsse-guess")
                throw ArgumentError("experiment: unknown algorithm " + a);
    }
};

struct RunRow {
    std::size_t run = 0;
    std::string family;
    std::size_t k_true = 0;
    std::size_t k_est = 0;
    std::string algo;
    double delta_eta0 = std::nan("");
    double delta_etadiam = std::nan("");
    double min_cover = std::nan("");
    int diam_gn = 0;
    double ms_elapsed = 0.0;
    std::string error;  // empty on success
};

struct Aggregate {
    std::string algo;
    std::size_t rows = 0;     // successful rows entering the means
    double count_accuracy = 0.0;
    double mean_delta_eta0 = 0.0;
    double mean_delta_etadiam = 0.0;
    double mean_cover = 0.0;
    double mean_diam = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<RunRow> rows;
    std::vector<Aggregate> aggregates;
};

inline std::vector<Aggregate> aggregate_rows(
    const std::vector<std::string>& algorithms,
    const std::vector<RunRow>& rows) {
    std::vector<Aggregate> out;
    for (const auto& algo : algorithms) {
        Aggregate a;
        a.algo = algo;
        std::size_t hits = 0;
        for (const auto& r : rows) {
            if (r.algo != algo || !r.error.empty()) continue;
            ++a.rows;
            if (r.k_est == r.k_true) ++hits;
            a.mean_delta_eta0 += r.delta_eta0;
            a.mean_delta_etadiam += r.delta_etadiam;
            a.mean_cover += r.min_cover;
            a.mean_diam += r.diam_gn;
        }
        if (a.rows > 0) {
            const double n = static_cast<double>(a.rows);
            a.count_accuracy = static_cast<double>(hits) / n;
            a.mean_delta_eta0 /= n;
            a.mean_delta_etadiam /= n;
            a.mean_cover /= n;
            a.mean_diam /= n;
        }
        out.push_back(a);
    }
    return out;
}

namespace detail {

struct RunInstance {
    Graph graph;
    NodeSet sources;
};

inline RunInstance make_instance(const ExperimentConfig& cfg,
                                 std::uint64_t gen_seed,
                                 std::uint64_t place_seed) {
    RunInstance inst;
    if (cfg.family == "geometric-tree") {
        GeoTreeParams p = cfg.geo;
        p.seed = gen_seed;
        auto planted = gen_geometric_instance(p, cfg.k_true, cfg.separation,
                                              cfg.interior_depth, gen_seed);
        inst.graph = std::move(planted.graph);
        inst.sources = std::move(planted.sources);
        return inst;
    }
    if (cfg.family == "regular-tree")
        inst.graph = gen_regular_tree(cfg.degree, cfg.depth);
    else
        inst.graph = gen_small_world(cfg.n, cfg.ws_k, cfg.ws_p, gen_seed);
    for (int sep = cfg.separation; sep >= 2; --sep) {
        try {
            inst.sources = pick_sources(
                inst.graph, PlacementParams{cfg.k_true, sep, 2000, place_seed});
            return inst;
        } catch (const PlacementError&) {
        }
    }
    throw PlacementError("experiment: could not place sources");
}

// Remaps a full-graph partition onto the infection subgraph's local ids.
inline Partition localize_partition(const InducedSubgraph& sub,
                                    const Partition& full,
                                    const NodeSet& centers) {
    Partition p;
    p.region_of.assign(sub.graph.node_count(), -1);
    for (std::size_t i = 0; i < sub.to_parent.size(); ++i)
        p.region_of[i] = full.region_of[sub.to_parent[i]];
    for (node c : centers)
        p.centers.push_back(static_cast<node>(sub.to_local[c]));
    return p;
}

// Connected components as induced subgraphs, ordered by smallest node id.
inline std::vector<InducedSubgraph> split_components(const Graph& g) {
    std::vector<char> seen(g.node_count(), 0);
    std::vector<InducedSubgraph> comps;
    for (node v = 0; v < g.node_count(); ++v) {
        if (seen[v]) continue;
        NodeSet comp = g.component_of(v);
        canonicalize(comp);
        for (node u : comp) seen[u] = 1;
        comps.push_back(induced_subgraph(g, comp));
    }
    return comps;
}

// Per-node single-source scores within one component.
inline std::vector<double> component_scores(const Graph& g) {
    if (g.node_count() == 1) return {0.0};
    if (g.is_tree()) {
        auto table = SubtreeTable::build(g);
        std::vector<double> scores(g.node_count());
        for (node v = 0; v < g.node_count(); ++v)
            scores[v] = single_source_count(table, v).log_value;
        return scores;
    }
    return sse_bfs_scores(g);
}

inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

}  // namespace detail

// One simulation run evaluated under every configured algorithm. Failures
// surface as rows carrying an error message instead of aborting the sweep.
inline std::vector<RunRow> run_single(const ExperimentConfig& cfg,
                                      std::size_t run_index) {
    const std::uint64_t run_seed = derive_seed(cfg.seed, run_index + 1);
    Rng seeder(run_seed);
    const std::uint64_t gen_seed = seeder.next_u64();
    const std::uint64_t place_seed = seeder.next_u64();
    const std::uint64_t sim_seed = seeder.next_u64();
    const std::uint64_t algo_seed = seeder.next_u64();
    const std::uint64_t guess_seed = seeder.next_u64();

    std::vector<RunRow> rows;
    auto blank = [&](const std::string& algo) {
        RunRow r;
        r.run = run_index;
        r.family = cfg.family;
        r.k_true = cfg.k_true;
        r.algo = algo;
        return r;
    };
    auto fail_all = [&](const std::string& msg) {
        for (const auto& algo : cfg.algorithms) {
            RunRow r = blank(algo);
            r.error = msg;
            rows.push_back(r);
        }
        return rows;
    };

    InducedSubgraph sub;
    Partition truth;
    NodeSet truth_local;
    int diam = 0;
    try {
        auto inst = detail::make_instance(cfg, gen_seed, place_seed);
        auto outcome =
            simulate_si(inst.graph, inst.sources, cfg.stop_n, sim_seed);
        sub = induced_subgraph(inst.graph, outcome.infected_set());
        truth = detail::localize_partition(sub, outcome.true_partition,
                                           inst.sources);
        truth_local = truth.centers;
        canonicalize(truth_local);
        diam = graph_diameter(sub.graph);
    } catch (const std::exception& e) {
        return fail_all(e.what());
    }

    // Each component of the infection graph holds at least one source, so
    // the estimators run per component (mirroring the connected-graph
    // reduction) and the results are reassembled on the full node set.
    const auto comps = detail::split_components(sub.graph);

    for (const auto& algo : cfg.algorithms) {
        RunRow r = blank(algo);
        r.diam_gn = diam;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            NodeSet est;
            Partition est_part;
            if (algo == "msep" || algo == "msep-bfs") {
                if (comps.size() > cfg.k_max)
                    throw StructureError(
                        "more infection components than k_max");
                MsepConfig mc;
                mc.k_max = cfg.k_max - comps.size() + 1;
                mc.tau = cfg.tau;
                mc.seed = algo_seed;
                est_part.region_of.assign(sub.graph.node_count(), -1);
                int offset = 0;
                for (const auto& comp : comps) {
                    MsepConfig local = mc;
                    local.k_max =
                        std::min(local.k_max, comp.graph.node_count());
                    MsepResult res = algo == "msep"
                                         ? msep(comp.graph, local)
                                         : msep_bfs(comp.graph, local);
                    for (node c : res.regions.centers)
                        est_part.centers.push_back(comp.to_parent[c]);
                    for (node v = 0; v < comp.graph.node_count(); ++v)
                        est_part.region_of[comp.to_parent[v]] =
                            offset + res.regions.region_of[v];
                    offset += static_cast<int>(res.k_final);
                }
                est = est_part.centers;
                canonicalize(est);
            } else {
                std::size_t k = cfg.k_true;
                if (algo == "nsse-guess") {
                    Rng guess(guess_seed);
                    k = static_cast<std::size_t>(guess.range(
                        1, static_cast<long long>(cfg.k_max)));
                }
                // score every node within its component; hand the largest
                // components one pick each, then fill by best score
                std::vector<std::size_t> order(comps.size());
                std::iota(order.begin(), order.end(), 0);
                std::stable_sort(order.begin(), order.end(),
                                 [&](std::size_t a, std::size_t b) {
                                     return comps[a].graph.node_count() >
                                            comps[b].graph.node_count();
                                 });
                std::vector<char> chosen(sub.graph.node_count(), 0);
                std::vector<std::pair<double, node>> pool;
                std::vector<node> comp_best(comps.size());
                for (std::size_t rank = 0; rank < order.size(); ++rank) {
                    const auto& comp = comps[order[rank]];
                    auto scores = detail::component_scores(comp.graph);
                    node best = 0;
                    for (node v = 1; v < scores.size(); ++v)
                        if (scores[v] > scores[best]) best = v;
                    comp_best[order[rank]] = comp.to_parent[best];
                    if (rank < k) {
                        est.push_back(comp.to_parent[best]);
                        chosen[comp.to_parent[best]] = 1;
                    }
                    for (node v = 0; v < scores.size(); ++v)
                        pool.emplace_back(scores[v], comp.to_parent[v]);
                }
                std::stable_sort(pool.begin(), pool.end(),
                                 [](const auto& a, const auto& b) {
                                     if (a.first != b.first)
                                         return a.first > b.first;
                                     return a.second < b.second;
                                 });
                for (const auto& [score, v] : pool) {
                    if (est.size() >= k) break;
                    if (!chosen[v]) {
                        est.push_back(v);
                        chosen[v] = 1;
                    }
                }
                canonicalize(est);
                // components that got no pick still need a Voronoi seed so
                // the estimated partition covers every infected node
                NodeSet centers = est;
                for (std::size_t ci = 0; ci < comps.size(); ++ci) {
                    bool has = false;
                    for (node v : est)
                        if (comps[ci].to_local[v] != -1) has = true;
                    if (!has) centers.push_back(comp_best[ci]);
                }
                est_part = voronoi_partition(sub.graph, centers);
            }
            r.k_est = est.size();
            r.delta_eta0 = error_distance(sub.graph, est, truth_local, 0.0);
            r.delta_etadiam = error_distance(sub.graph, est, truth_local,
                                             static_cast<double>(diam));
            r.min_cover = region_covering(sub.graph, est_part, truth);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        const auto t1 = std::chrono::steady_clock::now();
        r.ms_elapsed =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        rows.push_back(r);
    }
    return rows;
}

// Monte Carlo sweep: `runs` independent instances, each seeded from the
// master seed and the run index, evaluated under every algorithm. Rows come
// back in run-index order whatever the worker interleaving was.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport report;
    report.config = cfg;
    std::vector<std::vector<RunRow>> per_run(cfg.runs);

    const std::size_t jobs = std::max<std::size_t>(1, cfg.jobs);
    if (jobs == 1) {
        for (std::size_t i = 0; i < cfg.runs; ++i)
            per_run[i] = run_single(cfg, i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= cfg.runs) break;
                per_run[i] = run_single(cfg, i);
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& rows : per_run)
        for (auto& r : rows) report.rows.push_back(std::move(r));
    report.aggregates = aggregate_rows(cfg.algorithms, report.rows);
    return report;
}

inline void write_report_csv(const ExperimentReport& report,
                             std::ostream& out) {
    out << "run,family,k_true,k_est,algo,delta_eta0,delta_etadiam,"
           "min_cover,diam_gn,ms_elapsed\n";
    for (const auto& r : report.rows)
        out << r.run << ',' << r.family << ',' << r.k_true << ',' << r.k_est
            << ',' << r.algo << ',' << detail::format_double(r.delta_eta0)
            << ',' << detail::format_double(r.delta_etadiam) << ','
            << detail::format_double(r.min_cover) << ',' << r.diam_gn << ','
            << detail::format_double(r.ms_elapsed) << '\n';
}

}  // namespace episource

#endif
