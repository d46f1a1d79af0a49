#ifndef EPISOURCE_GRAPH_HPP
#define EPISOURCE_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "episource/error.hpp"

namespace episource {

using node = std::uint32_t;

// Sorted, strictly ascending list of node ids.
using NodeSet = std::vector<node>;

inline void canonicalize(NodeSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline constexpr int kUnreached = -1;

// Immutable-after-construction undirected graph over dense 0-based ids.
// Adjacency lists are kept sorted ascending; no self-loops, no duplicates.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adj_(n) {}

    std::size_t node_count() const { return adj_.size(); }

    std::size_t edge_count() const {
        std::size_t deg = 0;
        for (const auto& a : adj_) deg += a.size();
        return deg / 2;
    }

    const std::vector<node>& neighbors(node v) const { return adj_[v]; }

    std::size_t degree(node v) const { return adj_[v].size(); }

    bool has_edge(node u, node v) const {
        const auto& a = adj_[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    // Inserts the edge if absent. Self-loops rejected.
    void add_edge(node u, node v) {
        if (u >= adj_.size() || v >= adj_.size())
            throw ArgumentError("add_edge: node id out of range");
        if (u == v) throw ArgumentError("add_edge: self-loop");
        insert_sorted(adj_[u], v);
        insert_sorted(adj_[v], u);
    }

    // Index of v within u's adjacency list.
    std::size_t neighbor_index(node u, node v) const {
        const auto& a = adj_[u];
        auto it = std::lower_bound(a.begin(), a.end(), v);
        if (it == a.end() || *it != v)
            throw ArgumentError("neighbor_index: edge not present");
        return static_cast<std::size_t>(it - a.begin());
    }

    // Full-scan audit of the symmetry / no-duplicate / no-self-loop invariants.
    bool invariants_hold() const {
        for (node u = 0; u < adj_.size(); ++u) {
            const auto& a = adj_[u];
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i] == u) return false;
                if (i > 0 && a[i] <= a[i - 1]) return false;
                if (a[i] >= adj_.size()) return false;
                if (!has_edge(a[i], u)) return false;
            }
        }
        return true;
    }

    bool is_connected() const {
        if (adj_.empty()) return true;
        return component_of(0).size() == adj_.size();
    }

    bool is_tree() const {
        return is_connected() && edge_count() + 1 == node_count();
    }

    NodeSet component_of(node root) const {
        std::vector<char> seen(adj_.size(), 0);
        std::deque<node> q{root};
        seen[root] = 1;
        NodeSet out;
        while (!q.empty()) {
            node v = q.front();
            q.pop_front();
            out.push_back(v);
            for (node w : adj_[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push_back(w);
                }
        }
        canonicalize(out);
        return out;
    }

private:
    static void insert_sorted(std::vector<node>& a, node v) {
        auto it = std::lower_bound(a.begin(), a.end(), v);
        if (it == a.end() || *it != v) a.insert(it, v);
    }

    std::vector<std::vector<node>> adj_;
};

// BFS hop distances from root; kUnreached marks nodes outside the component.
inline std::vector<int> distances_from(const Graph& g, node root) {
    if (root >= g.node_count())
        throw ArgumentError("distances_from: root out of range");
    std::vector<int> dist(g.node_count(), kUnreached);
    std::deque<node> q{root};
    dist[root] = 0;
    while (!q.empty()) {
        node v = q.front();
        q.pop_front();
        for (node w : g.neighbors(v))
            if (dist[w] == kUnreached) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
    }
    return dist;
}

struct BfsTree {
    Graph tree;               // spanning tree of the root's component
    std::vector<node> order;  // BFS discovery sequence, root first
    std::vector<int> parent;  // parent[v] in the tree; -1 for root/unreached
};

// Deterministic BFS: neighbors explored in ascending id order.
inline BfsTree bfs_tree(const Graph& g, node root) {
    if (root >= g.node_count())
        throw ArgumentError("bfs_tree: root out of range");
    BfsTree out;
    out.tree = Graph(g.node_count());
    out.parent.assign(g.node_count(), -1);
    std::vector<char> seen(g.node_count(), 0);
    std::deque<node> q{root};
    seen[root] = 1;
    while (!q.empty()) {
        node v = q.front();
        q.pop_front();
        out.order.push_back(v);
        for (node w : g.neighbors(v))
            if (!seen[w]) {
                seen[w] = 1;
                out.parent[w] = static_cast<int>(v);
                out.tree.add_edge(v, w);
                q.push_back(w);
            }
    }
    return out;
}

// Largest BFS eccentricity over all nodes of a connected graph.
inline int graph_diameter(const Graph& g) {
    int diam = 0;
    for (node v = 0; v < g.node_count(); ++v) {
        auto d = distances_from(g, v);
        for (int x : d)
            if (x > diam) diam = x;
    }
    return diam;
}

struct InducedSubgraph {
    Graph graph;                  // dense re-indexed subgraph
    std::vector<node> to_parent;  // local id -> original id
    std::vector<int> to_local;    // original id -> local id, -1 if absent
};

inline InducedSubgraph induced_subgraph(const Graph& g, const NodeSet& nodes) {
    InducedSubgraph out;
    out.to_local.assign(g.node_count(), -1);
    out.to_parent = nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] >= g.node_count())
            throw ArgumentError("induced_subgraph: node out of range");
        out.to_local[nodes[i]] = static_cast<int>(i);
    }
    out.graph = Graph(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (node w : g.neighbors(nodes[i])) {
            int j = out.to_local[w];
            if (j >= 0 && static_cast<node>(j) > i)
                out.graph.add_edge(static_cast<node>(i),
                                   static_cast<node>(j));
        }
    return out;
}

// Edge-list text: "<u> <v>" per line, '#' comments and blank lines ignored.
// node_count = max id + 1; duplicate edges collapse.
inline Graph load_edge_list(std::istream& in) {
    std::vector<std::pair<node, node>> edges;
    node max_id = 0;
    bool any = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        std::istringstream ls(line);
        long long u = -1, v = -1;
        std::string extra;
        if (!(ls >> u >> v) || u < 0 || v < 0 || (ls >> extra))
            throw ParseError("edge list: malformed line " +
                             std::to_string(line_no));
        if (u == v)
            throw ParseError("edge list: self-loop at line " +
                             std::to_string(line_no));
        edges.emplace_back(static_cast<node>(u), static_cast<node>(v));
        max_id = std::max({max_id, static_cast<node>(u), static_cast<node>(v)});
        any = true;
    }
    Graph g(any ? max_id + 1 : 0);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

inline Graph load_edge_list(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

inline void save_edge_list(const Graph& g, std::ostream& out) {
    for (node u = 0; u < g.node_count(); ++u)
        for (node v : g.neighbors(u))
            if (v > u) out << u << ' ' << v << '\n';
}

}  // namespace episource

#endif
