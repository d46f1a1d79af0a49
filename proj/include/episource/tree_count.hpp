#ifndef EPISOURCE_TREE_COUNT_HPP
#define EPISOURCE_TREE_COUNT_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "episource/error.hpp"
#include "episource/graph.hpp"
#include "episource/logsum.hpp"

namespace episource {

// Per-directed-edge subtree sizes f and log-products log g of a tree,
// filled by one leaf-to-root and one root-to-leaf sweep.
//
// For adjacent (w, u): f(w, u) = |T_w(u)| is the size of the component
// containing w once edge (w, u) is cut, and
// g_w(u) = prod_{v in T_w(u)} |T_v(u)| carried as log_g(w, u).
class SubtreeTable {
public:
    SubtreeTable() = default;

    static SubtreeTable build(const Graph& g, node root = 0) {
        if (!g.is_tree())
            throw StructureError("tree_tables: input is not a tree");
        if (root >= g.node_count())
            throw ArgumentError("tree_tables: root out of range");
        SubtreeTable t;
        t.g_ = &g;
        const std::size_t n = g.node_count();
        t.f_.resize(n);
        t.logg_.resize(n);
        t.gsum_.assign(n, 0.0);
        for (node u = 0; u < n; ++u) {
            t.f_[u].assign(g.degree(u), 0);
            t.logg_[u].assign(g.degree(u), 0.0);
        }
        if (n == 0) return t;

        auto bfs = bfs_tree(g, root);
        const auto& order = bfs.order;
        const auto& parent = bfs.parent;

        // Upward: fill values for the edge toward the parent.
        for (std::size_t i = order.size(); i-- > 0;) {
            node w = order[i];
            if (parent[w] < 0) continue;
            node p = static_cast<node>(parent[w]);
            std::int64_t f_up = 1;
            double logg_up = 0.0;
            for (std::size_t j = 0; j < g.degree(w); ++j) {
                node x = g.neighbors(w)[j];
                if (x == p) continue;
                f_up += t.f_[w][j];
                logg_up += t.logg_[w][j];
            }
            logg_up += std::log(static_cast<double>(f_up));
            std::size_t slot = g.neighbor_index(p, w);
            t.f_[p][slot] = f_up;
            t.logg_[p][slot] = logg_up;
        }
        // Downward: fill values for edges toward children.
        for (node w : order) {
            int pi = parent[w];
            double child_total = 0.0;
            for (std::size_t j = 0; j < g.degree(w); ++j)
                if (pi < 0 || g.neighbors(w)[j] != static_cast<node>(pi))
                    child_total += t.logg_[w][j];
            double up = 0.0;
            if (pi >= 0) {
                std::size_t pslot = g.neighbor_index(w, static_cast<node>(pi));
                up = t.logg_[w][pslot];
            }
            for (std::size_t j = 0; j < g.degree(w); ++j) {
                node x = g.neighbors(w)[j];
                if (pi >= 0 && x == static_cast<node>(pi)) continue;
                std::int64_t f_down =
                    static_cast<std::int64_t>(n) - t.f_[w][j];
                double logg_down = std::log(static_cast<double>(f_down)) +
                                   up + child_total - t.logg_[w][j];
                std::size_t slot = g.neighbor_index(x, w);
                t.f_[x][slot] = f_down;
                t.logg_[x][slot] = logg_down;
            }
        }
        for (node u = 0; u < n; ++u)
            for (double v : t.logg_[u]) t.gsum_[u] += v;
        return t;
    }

    std::size_t size() const { return f_.size(); }

    // |T_w(u)| for neighbors (w, u).
    std::int64_t f(node w, node u) const {
        return f_[u][g_->neighbor_index(u, w)];
    }
    // log g_w(u) for neighbors (w, u).
    double log_g(node w, node u) const {
        return logg_[u][g_->neighbor_index(u, w)];
    }
    // sum over all neighbors w of log g_w(u).
    double log_g_sum(node u) const { return gsum_[u]; }

    // By adjacency slot, for callers iterating neighbor lists.
    std::int64_t f_at(node u, std::size_t slot) const { return f_[u][slot]; }
    double log_g_at(node u, std::size_t slot) const { return logg_[u][slot]; }

private:
    const Graph* g_ = nullptr;
    std::vector<std::vector<std::int64_t>> f_;
    std::vector<std::vector<double>> logg_;
    std::vector<double> gsum_;
};

inline SubtreeTable tree_tables(const Graph& g_n, node root = 0) {
    return SubtreeTable::build(g_n, root);
}

// log C(s, G_n) = log n! - sum_{u in G_n} log |T_u(s)|
//               = log (n-1)! - sum_{w in N(s)} log g_w(s).
inline LogCount single_source_count(const SubtreeTable& table, node s) {
    if (s >= table.size())
        throw ArgumentError("single_source_count: node out of range");
    const double n = static_cast<double>(table.size());
    return LogCount{log_factorial(n - 1.0) - table.log_g_sum(s)};
}

inline LogCount single_source_count(const Graph& g_n, node s) {
    return single_source_count(SubtreeTable::build(g_n), s);
}

}  // namespace episource

#endif
