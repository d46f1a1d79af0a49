#ifndef EPISOURCE_SIMULATE_HPP
#define EPISOURCE_SIMULATE_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "episource/error.hpp"
#include "episource/graph.hpp"
#include "episource/partition.hpp"
#include "episource/rng.hpp"

namespace episource {

struct PlacementParams {
    std::size_t k = 1;
    int tau = 2;  // minimum pairwise hop separation
    std::size_t max_attempts = 10000;
    std::uint64_t seed = 0;

    void validate() const {
        if (k < 1) throw ArgumentError("pick_sources: k must be >= 1");
        if (tau < 2) throw ArgumentError("pick_sources: tau must be >= 2");
    }
};

// Rejection sampling: k distinct uniform nodes with pairwise distance >= tau.
inline NodeSet pick_sources(const Graph& g, const PlacementParams& params) {
    params.validate();
    if (params.k > g.node_count())
        throw ArgumentError("pick_sources: k exceeds node count");
    Rng rng(params.seed);
    for (std::size_t attempt = 0; attempt < params.max_attempts; ++attempt) {
        NodeSet pick;
        while (pick.size() < params.k) {
            node v = static_cast<node>(rng.below(g.node_count()));
            bool dup = false;
            for (node u : pick) dup |= (u == v);
            if (!dup) pick.push_back(v);
        }
        bool ok = true;
        for (std::size_t i = 0; ok && i < pick.size(); ++i) {
            auto dist = distances_from(g, pick[i]);
            for (std::size_t j = i + 1; j < pick.size(); ++j) {
                int d = dist[pick[j]];
                if (d == kUnreached || d < params.tau) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            canonicalize(pick);
            return pick;
        }
    }
    throw PlacementError("pick_sources: no valid placement after " +
                         std::to_string(params.max_attempts) + " attempts");
}

struct InfectionOutcome {
    NodeSet sources;
    std::vector<node> infected_order;       // sources first, in given order
    std::unordered_map<node, node> parent;  // non-source infected -> infector
    Partition true_partition;               // parent-chain regions
    double elapsed = 0.0;                   // virtual time, rate-1 units

    NodeSet infected_set() const {
        NodeSet s(infected_order);
        canonicalize(s);
        return s;
    }
};

// SI spreading: every infected->susceptible edge carries an independent
// rate-1 exponential clock. Step-sampled form: the next infected node is
// drawn proportional to its infected-neighbor count, the elapsed time
// advances by Exp(total susceptible edge count). Exact for the model.
inline InfectionOutcome simulate_si(const Graph& g, const NodeSet& sources,
                                    std::size_t stop_n, std::uint64_t seed) {
    if (sources.empty()) throw ArgumentError("simulate_si: no sources");
    if (stop_n < sources.size())
        throw ArgumentError("simulate_si: stop_n below source count");
    Rng rng(seed);

    InfectionOutcome out;
    out.sources = sources;
    out.true_partition.centers = sources;
    out.true_partition.region_of.assign(g.node_count(), -1);

    std::vector<char> infected(g.node_count(), 0);
    // Susceptible frontier with infected-neighbor counts.
    std::vector<int> hot_degree(g.node_count(), 0);
    std::vector<node> frontier;
    std::vector<int> frontier_pos(g.node_count(), -1);
    std::size_t total_edges = 0;

    auto infect = [&](node v, int region) {
        infected[v] = 1;
        out.infected_order.push_back(v);
        out.true_partition.region_of[v] = region;
        if (frontier_pos[v] >= 0) {
            total_edges -= static_cast<std::size_t>(hot_degree[v]);
            std::size_t i = static_cast<std::size_t>(frontier_pos[v]);
            frontier[i] = frontier.back();
            frontier_pos[frontier[i]] = static_cast<int>(i);
            frontier.pop_back();
            frontier_pos[v] = -1;
            hot_degree[v] = 0;
        }
        for (node w : g.neighbors(v)) {
            if (infected[w]) continue;
            if (frontier_pos[w] < 0) {
                frontier_pos[w] = static_cast<int>(frontier.size());
                frontier.push_back(w);
            }
            hot_degree[w]++;
            total_edges++;
        }
    };

    for (std::size_t i = 0; i < sources.size(); ++i) {
        if (sources[i] >= g.node_count())
            throw ArgumentError("simulate_si: source out of range");
        if (infected[sources[i]])
            throw ArgumentError("simulate_si: duplicate source");
        infect(sources[i], static_cast<int>(i));
    }

    while (out.infected_order.size() < stop_n) {
        if (total_edges == 0)
            throw ArgumentError("simulate_si: stop_n exceeds reachable nodes");
        out.elapsed += rng.exponential(static_cast<double>(total_edges));
        std::uint64_t pick = rng.below(total_edges);
        node next = 0;
        for (node v : frontier) {
            std::uint64_t d = static_cast<std::uint64_t>(hot_degree[v]);
            if (pick < d) {
                next = v;
                break;
            }
            pick -= d;
        }
        // Infector: the neighbor whose edge fired (uniform among infected
        // neighbors).
        std::uint64_t which = rng.below(static_cast<std::uint64_t>(hot_degree[next]));
        node par = next;
        for (node w : g.neighbors(next))
            if (infected[w] && which-- == 0) {
                par = w;
                break;
            }
        out.parent[next] = par;
        infect(next, out.true_partition.region_of[par]);
    }
    return out;
}

}  // namespace episource

#endif
