#ifndef EPISOURCE_PARTITION_HPP
#define EPISOURCE_PARTITION_HPP

#include <deque>
#include <vector>

#include "episource/error.hpp"
#include "episource/graph.hpp"

namespace episource {

// Assignment of every node to exactly one center's region.
// region_of[v] == -1 marks nodes outside the partition (unused slots when a
// partition covers only a subset of a larger id space).
struct Partition {
    std::vector<int> region_of;
    NodeSet centers;  // centers[i] lies in region i

    std::size_t region_count() const { return centers.size(); }

    std::vector<NodeSet> regions() const {
        std::vector<NodeSet> out(centers.size());
        for (node v = 0; v < region_of.size(); ++v)
            if (region_of[v] >= 0)
                out[static_cast<std::size_t>(region_of[v])].push_back(v);
        return out;
    }
};

// Multi-source BFS: each node joins the region of its nearest center; hop
// ties go to the smaller region index. Regions come out connected.
inline Partition voronoi_partition(const Graph& g, const NodeSet& centers) {
    if (centers.empty())
        throw ArgumentError("voronoi_partition: no centers");
    for (node c : centers)
        if (c >= g.node_count())
            throw ArgumentError("voronoi_partition: center outside graph");

    Partition p;
    p.centers = centers;
    p.region_of.assign(g.node_count(), -1);
    std::vector<int> dist(g.node_count(), kUnreached);

    std::vector<node> frontier;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        node c = centers[i];
        if (dist[c] == 0) continue;  // duplicated center: first index wins
        dist[c] = 0;
        p.region_of[c] = static_cast<int>(i);
        frontier.push_back(c);
    }
    int level = 0;
    while (!frontier.empty()) {
        ++level;
        std::vector<node> next;
        for (node v : frontier)
            for (node w : g.neighbors(v)) {
                if (dist[w] == kUnreached) {
                    dist[w] = level;
                    p.region_of[w] = p.region_of[v];
                    next.push_back(w);
                } else if (dist[w] == level &&
                           p.region_of[v] < p.region_of[w]) {
                    p.region_of[w] = p.region_of[v];  // tie: smaller index
                }
            }
        frontier.swap(next);
    }
    return p;
}

// Checks the Voronoi property of a partition against BFS distances.
inline bool voronoi_property_holds(const Graph& g, const Partition& p) {
    std::vector<std::vector<int>> dist;
    dist.reserve(p.centers.size());
    for (node c : p.centers) dist.push_back(distances_from(g, c));
    for (node v = 0; v < g.node_count(); ++v) {
        int r = p.region_of[v];
        if (r < 0) continue;
        int own = dist[static_cast<std::size_t>(r)][v];
        if (own == kUnreached) return false;
        for (std::size_t i = 0; i < p.centers.size(); ++i) {
            int d = dist[i][v];
            if (d != kUnreached && d < own) return false;
        }
    }
    return true;
}

// Every region connected in g and containing its center.
inline bool partition_regions_connected(const Graph& g, const Partition& p) {
    auto regs = p.regions();
    for (std::size_t i = 0; i < regs.size(); ++i) {
        if (regs[i].empty()) return false;
        auto sub = induced_subgraph(g, regs[i]);
        if (!sub.graph.is_connected()) return false;
        if (sub.to_local[p.centers[i]] < 0) return false;
    }
    return true;
}

}  // namespace episource

#endif
