#ifndef EPISOURCE_GENERATORS_HPP
#define EPISOURCE_GENERATORS_HPP

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "episource/error.hpp"
#include "episource/graph.hpp"
#include "episource/rng.hpp"

namespace episource {

namespace detail {

// Edge accumulator so generators can allocate ids before the Graph exists.
struct GraphBuilder {
    std::vector<std::pair<node, node>> edges;
    node next_id = 0;

    node fresh() { return next_id++; }
    void edge(node u, node v) { edges.emplace_back(u, v); }

    Graph build() const {
        Graph g(next_id);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }
};

inline long long level_lo(double b, double alpha, int r) {
    return std::llround(b * std::pow(static_cast<double>(r), alpha));
}
inline long long level_hi(double c, double alpha, int r) {
    return std::llround(c * std::pow(static_cast<double>(r), alpha));
}

// Grows a subtree under `anchor` whose level-r populations (r = 1 ..
// depth-1, measured from `anchor`'s child `u`) are drawn uniformly from
// [round(b r^a), round(c r^a)]. Level r+1 attaches to level r round-robin.
// `max_children` of 0 means uncapped.
inline node append_geometric_subtree(GraphBuilder& gb, node anchor, int depth,
                                     double alpha, double b, double c,
                                     Rng& rng, int max_children = 0) {
    node u = gb.fresh();
    gb.edge(anchor, u);
    std::vector<node> level{u};
    for (int r = 1; r <= depth - 1; ++r) {
        const long long lo = level_lo(b, alpha, r);
        const long long hi = level_hi(c, alpha, r);
        if (lo > hi)
            throw GenerationError("geometric subtree: empty size range at level " +
                                  std::to_string(r));
        const long long size = rng.range(lo, hi);
        if (size > 0 && level.empty())
            throw GenerationError(
                "geometric subtree: infeasible level schedule at level " +
                std::to_string(r) + " (no parents available)");
        if (max_children > 0 && !level.empty() &&
            size > static_cast<long long>(level.size()) * max_children)
            throw GenerationError(
                "geometric subtree: infeasible level schedule at level " +
                std::to_string(r) + " (max-degree cap)");
        std::vector<node> next;
        next.reserve(static_cast<std::size_t>(size));
        for (long long j = 0; j < size; ++j) {
            node w = gb.fresh();
            gb.edge(level[static_cast<std::size_t>(j) % level.size()], w);
            next.push_back(w);
        }
        level.swap(next);
        if (level.empty()) {
            // All deeper levels would be empty; the audit still has to pass.
            for (int rr = r + 1; rr <= depth - 1; ++rr)
                if (level_lo(b, alpha, rr) > 0)
                    throw GenerationError(
                        "geometric subtree: infeasible level schedule at level " +
                        std::to_string(rr));
            break;
        }
    }
    return u;
}

}  // namespace detail

// Rooted tree where every internal node has exactly `degree` neighbors and
// all leaves sit at the given depth. Node 0 is the root.
inline Graph gen_regular_tree(int degree, int depth) {
    if (degree < 2) throw ArgumentError("gen_regular_tree: degree must be >= 2");
    if (depth < 1) throw ArgumentError("gen_regular_tree: depth must be >= 1");
    detail::GraphBuilder gb;
    node root = gb.fresh();
    std::vector<node> level{root};
    for (int d = 1; d <= depth; ++d) {
        std::vector<node> next;
        for (node v : level) {
            const int children = (d == 1) ? degree : degree - 1;
            for (int i = 0; i < children; ++i) {
                node w = gb.fresh();
                gb.edge(v, w);
                next.push_back(w);
            }
        }
        level.swap(next);
    }
    return gb.build();
}

struct GeoTreeParams {
    double alpha = 1.0;
    double b = 2.0;
    double c = 3.0;
    int d_min = 3;  // root degree bounds
    int d_max = 3;
    int depth = 4;
    int max_children = 0;  // per-parent cap inside subtrees; 0 = uncapped
    std::uint64_t seed = 0;

    void validate() const {
        if (alpha <= 0) throw ArgumentError("geometric tree: alpha must be > 0");
        if (b > c) throw ArgumentError("geometric tree: requires b <= c");
        if (b <= 0) throw ArgumentError("geometric tree: b must be > 0");
        if (depth < 1) throw ArgumentError("geometric tree: depth must be >= 1");
        if (d_min < 1 || d_min > d_max)
            throw ArgumentError("geometric tree: need 1 <= d_min <= d_max");
    }
};

// Root (node 0) with degree drawn in [d_min, d_max]; each root-child subtree
// grows polynomially per GeoTreeParams. Deterministic under seed.
inline Graph gen_geometric_tree(const GeoTreeParams& p) {
    p.validate();
    Rng rng(p.seed);
    detail::GraphBuilder gb;
    node root = gb.fresh();
    const int deg = static_cast<int>(rng.range(p.d_min, p.d_max));
    for (int i = 0; i < deg; ++i)
        detail::append_geometric_subtree(gb, root, p.depth, p.alpha, p.b, p.c,
                                         rng, p.max_children);
    return gb.build();
}

struct GeometricAudit {
    bool ok = true;
    std::string detail;  // first violation, if any
};

// Post-construction check: every root-child subtree of `root` has level-r
// population within [round(b r^a), round(c r^a)] for 1 <= r <= depth-1.
inline GeometricAudit audit_geometric(const Graph& g, node root, double alpha,
                                      double b, double c, int depth) {
    GeometricAudit out;
    auto dist = distances_from(g, root);
    for (node u : g.neighbors(root)) {
        // Nodes of T_u: those whose path to root passes through u.
        // BFS from u with root blocked.
        std::vector<long long> count(static_cast<std::size_t>(depth) + 1, 0);
        std::vector<int> d(g.node_count(), kUnreached);
        std::deque<node> q{u};
        d[u] = 0;
        while (!q.empty()) {
            node v = q.front();
            q.pop_front();
            if (d[v] <= depth) count[static_cast<std::size_t>(d[v])]++;
            for (node w : g.neighbors(v)) {
                if (w == root || d[w] != kUnreached) continue;
                d[w] = d[v] + 1;
                q.push_back(w);
            }
        }
        for (int r = 1; r <= depth - 1; ++r) {
            const long long lo = detail::level_lo(b, alpha, r);
            const long long hi = detail::level_hi(c, alpha, r);
            const long long got = count[static_cast<std::size_t>(r)];
            if (got < lo || got > hi) {
                out.ok = false;
                out.detail = "subtree at node " + std::to_string(u) +
                             ", level " + std::to_string(r) + ": " +
                             std::to_string(got) + " outside [" +
                             std::to_string(lo) + ", " + std::to_string(hi) +
                             "]";
                return out;
            }
        }
    }
    return out;
}

// Watts-Strogatz: ring lattice joined to the k nearest neighbors, each
// lattice edge rewired with probability p (source endpoint kept).
inline Graph gen_small_world(std::size_t n, int k, double p,
                             std::uint64_t seed) {
    if (k <= 0 || k % 2 != 0)
        throw ArgumentError("gen_small_world: k must be positive and even");
    if (static_cast<std::size_t>(k) >= n)
        throw ArgumentError("gen_small_world: k must be < n");
    if (p < 0.0 || p > 1.0)
        throw ArgumentError("gen_small_world: p must be in [0, 1]");
    Rng rng(seed);
    std::vector<std::set<node>> adj(n);
    auto link = [&](node a, node b) {
        adj[a].insert(b);
        adj[b].insert(a);
    };
    for (node i = 0; i < n; ++i)
        for (int j = 1; j <= k / 2; ++j)
            link(i, static_cast<node>((i + static_cast<std::size_t>(j)) % n));
    for (int j = 1; j <= k / 2; ++j)
        for (node i = 0; i < n; ++i) {
            node old = static_cast<node>((i + static_cast<std::size_t>(j)) % n);
            if (!rng.bernoulli(p)) continue;
            // Skip if saturated: no admissible target exists.
            if (adj[i].size() >= n - 1) continue;
            node w;
            do {
                w = static_cast<node>(rng.below(n));
            } while (w == i || adj[i].count(w));
            adj[i].erase(old);
            adj[old].erase(i);
            link(i, w);
        }
    Graph g(n);
    for (node u = 0; u < n; ++u)
        for (node v : adj[u])
            if (v > u) g.add_edge(u, v);
    return g;
}

}  // namespace episource

#endif
