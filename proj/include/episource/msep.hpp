#ifndef EPISOURCE_MSEP_HPP
#define EPISOURCE_MSEP_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "episource/error.hpp"
#include "episource/estimators.hpp"
#include "episource/graph.hpp"
#include "episource/partition.hpp"
#include "episource/rng.hpp"
#include "episource/simulate.hpp"

namespace episource {

struct MsepConfig {
    std::size_t k_max = 2;   // starting number of regions
    int tau = 2;             // merge two regions when their joint pair
                             // estimate lands closer than tau hops
    std::size_t max_iter = 20;
    int eta_converge = 0;    // relocation loop stops once the largest center
                             // movement is <= eta_converge hops
    std::uint64_t seed = 0;

    void validate() const {
        if (k_max < 1) throw ArgumentError("msep: k_max must be >= 1");
        if (tau < 2) throw ArgumentError("msep: tau must be >= 2");
        if (max_iter < 1) throw ArgumentError("msep: max_iter must be >= 1");
        if (eta_converge < 0)
            throw ArgumentError("msep: eta_converge must be >= 0");
    }
};

struct MergeEvent {
    node kept;         // surviving source (joint pair estimate, smaller id)
    node dropped_a;    // centers of the two regions that merged
    node dropped_b;
    int pair_distance = 0;
    std::size_t k_after = 0;
};

struct MsepResult {
    NodeSet sources;
    Partition regions;
    std::size_t k_final = 0;
    std::vector<MergeEvent> merge_log;
};

namespace detail {

// Farthest-point fallback when rejection placement cannot satisfy any
// separation: grow the set greedily by max-min distance, ties to smaller id.
inline NodeSet dispersed_sources(const Graph& g, std::size_t k) {
    NodeSet out{0};
    std::vector<int> best = distances_from(g, 0);
    while (out.size() < k) {
        node pick = 0;
        int far = -1;
        for (node v = 0; v < g.node_count(); ++v)
            if (best[v] != kUnreached && best[v] > far) {
                far = best[v];
                pick = v;
            }
        out.push_back(pick);
        auto d = distances_from(g, pick);
        for (node v = 0; v < g.node_count(); ++v)
            if (d[v] != kUnreached && d[v] < best[v]) best[v] = d[v];
    }
    canonicalize(out);
    return out;
}

inline NodeSet initial_sources(const Graph& g, const MsepConfig& cfg) {
    for (int sep = cfg.tau; sep >= 2; --sep) {
        try {
            return pick_sources(
                g, PlacementParams{cfg.k_max, sep, 2000, cfg.seed});
        } catch (const PlacementError&) {
        }
    }
    return dispersed_sources(g, cfg.k_max);
}

// Best single source of one region's induced subgraph, in original ids.
inline node region_center(const Graph& g, const NodeSet& region,
                          bool bfs_heuristic) {
    auto sub = induced_subgraph(g, region);
    SourceEstimate est = bfs_heuristic && !sub.graph.is_tree()
                             ? sse_bfs(sub.graph)
                             : sse_tree(sub.graph);
    return sub.to_parent[est.nodes[0]];
}

}  // namespace detail

// Alternating refinement: Voronoi-partition around the current sources, then
// relocate each source to the best single source of its own region. Stops
// when the largest relocation distance drops to eta_converge hops or the
// iteration budget runs out.
inline MsepResult infection_partitioning(const Graph& g, NodeSet sources,
                                         const MsepConfig& cfg,
                                         bool bfs_heuristic = false) {
    cfg.validate();
    if (sources.empty())
        throw ArgumentError("infection_partitioning: no sources");
    if (!g.is_connected())
        throw StructureError("infection_partitioning: graph disconnected");

    MsepResult out;
    out.regions = voronoi_partition(g, sources);
    for (std::size_t it = 0; it < cfg.max_iter; ++it) {
        auto regs = out.regions.regions();
        NodeSet moved(sources.size());
        int max_move = 0;
        for (std::size_t i = 0; i < regs.size(); ++i) {
            moved[i] = detail::region_center(g, regs[i], bfs_heuristic);
            if (moved[i] != sources[i]) {
                auto d = distances_from(g, sources[i]);
                max_move = std::max(max_move, d[moved[i]]);
            }
        }
        canonicalize(moved);
        if (moved.size() < sources.size()) {
            // two regions collapsed onto one center; keep the old layout
            break;
        }
        bool same = moved == sources;
        sources = std::move(moved);
        out.regions = voronoi_partition(g, sources);
        if (same || max_move <= cfg.eta_converge) break;
    }
    out.sources = sources;
    out.regions = voronoi_partition(g, sources);
    out.k_final = sources.size();
    return out;
}

namespace detail {

// First adjacent region pair (i, j), i < j, in ascending scan order, for
// which the joint two-source estimate lands within tau hops. Returns the
// merge event to apply, or false.
template <typename JointGraph>
bool find_merge(const Graph& g, const MsepResult& state, int tau,
                MergeEvent* ev, JointGraph&& joint_graph) {
    auto regs = state.regions.regions();
    const std::size_t k = regs.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            bool adjacent = false;
            for (node u : regs[i]) {
                for (node w : g.neighbors(u))
                    if (state.regions.region_of[w] == static_cast<int>(j)) {
                        adjacent = true;
                        break;
                    }
                if (adjacent) break;
            }
            if (!adjacent) continue;
            auto [sub, local] = joint_graph(i, j, regs);
            SourceEstimate pair = tse(local);
            node a = sub.to_parent[pair.nodes[0]];
            node b = sub.to_parent[pair.nodes[1]];
            auto dist = distances_from(g, a);
            if (dist[b] >= tau) continue;
            ev->kept = std::min(a, b);
            ev->dropped_a = state.sources[i];
            ev->dropped_b = state.sources[j];
            ev->pair_distance = dist[b];
            ev->k_after = k - 1;
            return true;
        }
    return false;
}

inline NodeSet merged_sources(const MsepResult& state, const MergeEvent& ev) {
    NodeSet next;
    for (node s : state.sources)
        if (s != ev.dropped_a && s != ev.dropped_b) next.push_back(s);
    next.push_back(ev.kept);
    canonicalize(next);
    return next;
}

}  // namespace detail

// Source estimation with unknown source count on a tree: start from k_max
// dispersed seeds, alternate infection partitioning with a pairwise merge
// scan. Two adjacent regions merge when the exact two-source estimate of
// their joint subtree puts both sources within tau hops of each other.
inline MsepResult msep(const Graph& g_n, const MsepConfig& cfg) {
    cfg.validate();
    if (!g_n.is_tree()) throw StructureError("msep: input is not a tree");
    if (cfg.k_max > g_n.node_count())
        throw ArgumentError("msep: k_max exceeds node count");

    NodeSet sources = detail::initial_sources(g_n, cfg);
    std::vector<MergeEvent> log;
    for (;;) {
        MsepResult state = infection_partitioning(g_n, sources, cfg);
        state.merge_log = log;
        if (state.k_final == 1) return state;
        MergeEvent ev;
        bool merged = detail::find_merge(
            g_n, state, cfg.tau, &ev,
            [&](std::size_t i, std::size_t j,
                const std::vector<NodeSet>& regs) {
                NodeSet joint = regs[i];
                joint.insert(joint.end(), regs[j].begin(), regs[j].end());
                canonicalize(joint);
                auto sub = induced_subgraph(g_n, joint);
                auto memo = PairScoreTable::build(sub.graph);
                return std::pair(std::move(sub), std::move(memo));
            });
        if (!merged) return state;
        log.push_back(ev);
        sources = detail::merged_sources(state, ev);
    }
}

// General-graph variant: partitioning relocates via the BFS-tree heuristic,
// and a candidate region pair is judged on the tree formed by the two
// per-region BFS trees joined across one crossing edge (chosen at random
// from the seeded stream when several exist).
inline MsepResult msep_bfs(const Graph& g, const MsepConfig& cfg) {
    cfg.validate();
    if (!g.is_connected()) throw StructureError("msep_bfs: graph disconnected");
    if (cfg.k_max > g.node_count())
        throw ArgumentError("msep_bfs: k_max exceeds node count");

    NodeSet sources = detail::initial_sources(g, cfg);
    Rng rng(splitmix64(cfg.seed ^ 0x5bf03635u));
    std::vector<MergeEvent> log;
    for (;;) {
        MsepResult state = infection_partitioning(g, sources, cfg, true);
        state.merge_log = log;
        if (state.k_final == 1) return state;
        MergeEvent ev;
        bool merged = detail::find_merge(
            g, state, cfg.tau, &ev,
            [&](std::size_t i, std::size_t j,
                const std::vector<NodeSet>& regs) {
                NodeSet joint = regs[i];
                joint.insert(joint.end(), regs[j].begin(), regs[j].end());
                canonicalize(joint);
                auto sub = induced_subgraph(g, joint);

                // per-region BFS trees rooted at the current centers
                Graph tree(sub.graph.node_count());
                for (std::size_t r : {i, j}) {
                    auto reg = induced_subgraph(g, regs[r]);
                    auto bfs = bfs_tree(
                        reg.graph,
                        static_cast<node>(
                            reg.to_local[state.sources[r]]));
                    for (node u = 0; u < reg.graph.node_count(); ++u)
                        if (bfs.parent[u] >= 0) {
                            node gu = reg.to_parent[u];
                            node gp = reg.to_parent[static_cast<std::size_t>(
                                bfs.parent[u])];
                            tree.add_edge(
                                static_cast<node>(sub.to_local[gu]),
                                static_cast<node>(sub.to_local[gp]));
                        }
                }
                // one crossing edge stitches the trees together
                std::vector<std::pair<node, node>> crossing;
                for (node u : regs[i])
                    for (node w : g.neighbors(u))
                        if (state.regions.region_of[w] ==
                            static_cast<int>(j))
                            crossing.emplace_back(u, w);
                auto [cu, cw] = crossing[rng.below(crossing.size())];
                tree.add_edge(static_cast<node>(sub.to_local[cu]),
                              static_cast<node>(sub.to_local[cw]));
                auto memo = PairScoreTable::build(tree);
                return std::pair(std::move(sub), std::move(memo));
            });
        if (!merged) return state;
        log.push_back(ev);
        sources = detail::merged_sources(state, ev);
    }
}

}  // namespace episource

#endif
