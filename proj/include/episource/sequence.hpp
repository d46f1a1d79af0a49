#ifndef EPISOURCE_SEQUENCE_HPP
#define EPISOURCE_SEQUENCE_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "episource/error.hpp"
#include "episource/graph.hpp"
#include "episource/logsum.hpp"
#include "episource/partition.hpp"

namespace episource {

inline constexpr std::size_t kEnumerationGuard = 12;

// True iff every seq[i] has a neighbor among sources or earlier entries.
inline bool validate_sequence(const Graph& g, const NodeSet& sources,
                              const std::vector<node>& seq) {
    std::vector<char> infected(g.node_count(), 0);
    for (node s : sources) {
        if (s >= g.node_count())
            throw ArgumentError("validate_sequence: source out of range");
        infected[s] = 1;
    }
    for (node v : seq) {
        if (v >= g.node_count())
            throw ArgumentError("validate_sequence: node out of range");
        if (infected[v])
            throw ArgumentError("validate_sequence: node repeated in sequence");
        bool ok = false;
        for (node w : g.neighbors(v)) ok |= infected[w];
        if (!ok) return false;
        infected[v] = 1;
    }
    return true;
}

// log P(sigma | S): product over steps of (edges from the infected set to
// the chosen node) / (edges from the infected set to any susceptible node),
// counted in the full graph g.
inline double log_sequence_probability(const Graph& g, const NodeSet& sources,
                                       const std::vector<node>& seq) {
    if (!validate_sequence(g, sources, seq))
        throw ArgumentError("sequence_probability: not an infection sequence");
    std::vector<char> infected(g.node_count(), 0);
    std::vector<int> hot(g.node_count(), 0);  // infected-neighbor counts
    long long total = 0;                      // susceptible edge count
    auto infect = [&](node v) {
        infected[v] = 1;
        total -= hot[v];
        for (node w : g.neighbors(v))
            if (!infected[w]) {
                hot[w]++;
                total++;
            }
    };
    for (node s : sources) infect(s);
    double logp = 0.0;
    for (node v : seq) {
        logp += std::log(static_cast<double>(hot[v])) -
                std::log(static_cast<double>(total));
        infect(v);
    }
    return logp;
}

inline double sequence_probability(const Graph& g, const NodeSet& sources,
                                   const std::vector<node>& seq) {
    return std::exp(log_sequence_probability(g, sources, seq));
}

namespace detail {

template <typename Visit>
void enumerate_rec(const Graph& g, std::vector<char>& infected,
                   std::vector<int>& hot, std::vector<node>& seq,
                   std::size_t remaining, Visit&& visit) {
    if (remaining == 0) {
        visit(seq);
        return;
    }
    for (node v = 0; v < g.node_count(); ++v) {
        if (infected[v] || hot[v] == 0) continue;
        infected[v] = 1;
        for (node w : g.neighbors(v))
            if (!infected[w]) hot[w]++;
        seq.push_back(v);
        enumerate_rec(g, infected, hot, seq, remaining - 1, visit);
        seq.pop_back();
        for (node w : g.neighbors(v))
            if (!infected[w]) hot[w]--;
        infected[v] = 0;
    }
}

}  // namespace detail

// Exact backtracking enumeration of Omega(g_n, S). g_n must already be the
// infected subgraph (every node counts). Guarded at 12 non-source nodes.
inline std::uint64_t enumerate_sequences(
    const Graph& g_n, const NodeSet& sources,
    std::vector<std::vector<node>>* sequences = nullptr) {
    if (g_n.node_count() < sources.size() ||
        g_n.node_count() - sources.size() > kEnumerationGuard)
        throw RefusalError("enumerate_sequences: instance exceeds size guard");
    std::vector<char> infected(g_n.node_count(), 0);
    std::vector<int> hot(g_n.node_count(), 0);
    for (node s : sources) {
        if (s >= g_n.node_count())
            throw ArgumentError("enumerate_sequences: source out of range");
        infected[s] = 1;
    }
    for (node s : sources)
        for (node w : g_n.neighbors(s))
            if (!infected[w]) hot[w]++;
    std::uint64_t count = 0;
    std::vector<node> seq;
    detail::enumerate_rec(g_n, infected, hot, seq,
                          g_n.node_count() - sources.size(),
                          [&](const std::vector<node>& s) {
                              ++count;
                              if (sequences) sequences->push_back(s);
                          });
    return count;
}

// Unnormalized weight of an infection partition, evaluated on the
// source-connecting subgraph h_n: the summed probability of all infection
// sequences of h_n whose per-region subsequences are themselves infection
// sequences. Test oracle for the Voronoi-partition optimality claim.
inline LogCount partition_weight(const Graph& h_n, const NodeSet& sources,
                                 const Partition& coloring) {
    if (h_n.node_count() < sources.size() ||
        h_n.node_count() - sources.size() > kEnumerationGuard)
        throw RefusalError("partition_weight: instance exceeds size guard");
    if (coloring.centers != sources)
        throw ArgumentError("partition_weight: coloring centers != sources");
    if (coloring.region_of.size() != h_n.node_count())
        throw ArgumentError("partition_weight: coloring size mismatch");
    for (node v = 0; v < h_n.node_count(); ++v)
        if (coloring.region_of[v] < 0 ||
            coloring.region_of[v] >= static_cast<int>(sources.size()))
            throw ArgumentError("partition_weight: node without a region");
    if (!partition_regions_connected(h_n, coloring))
        throw ArgumentError("partition_weight: disconnected color class");

    std::vector<char> infected(h_n.node_count(), 0);
    std::vector<int> hot(h_n.node_count(), 0);       // any-region
    std::vector<int> hot_own(h_n.node_count(), 0);   // same-region
    long long total = 0;
    // dir = +1 infects v, dir = -1 undoes it. Undo must happen in LIFO
    // order so that hot[v] still reflects the state at infection time.
    auto infect = [&](node v, int dir) {
        infected[v] = dir > 0;
        total -= dir * hot[v];
        for (node w : h_n.neighbors(v)) {
            if (infected[w]) continue;
            hot[w] += dir;
            total += dir;
            if (coloring.region_of[w] == coloring.region_of[v])
                hot_own[w] += dir;
        }
    };
    for (node s : sources) infected[s] = 1;
    for (node s : sources) {
        infected[s] = 0;
        infect(s, +1);
    }

    double weight = 0.0;
    std::size_t remaining = h_n.node_count() - sources.size();
    // Backtracking over color-respecting sequences, accumulating the step
    // probability product along the way.
    auto rec = [&](auto&& self, double prob, std::size_t left) -> void {
        if (left == 0) {
            weight += prob;
            return;
        }
        for (node v = 0; v < h_n.node_count(); ++v) {
            if (infected[v] || hot_own[v] == 0) continue;
            double step = static_cast<double>(hot[v]) /
                          static_cast<double>(total);
            infect(v, +1);
            self(self, prob * step, left - 1);
            infect(v, -1);
        }
    };
    rec(rec, 1.0, remaining);
    return LogCount::from_count(weight);
}

}  // namespace episource

#endif
