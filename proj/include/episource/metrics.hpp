#ifndef EPISOURCE_METRICS_HPP
#define EPISOURCE_METRICS_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "episource/error.hpp"
#include "episource/graph.hpp"
#include "episource/partition.hpp"

namespace episource {

namespace detail {

inline constexpr std::size_t kMatchingGuard = 5;

// Minimum-cost injective matching from the smaller side into the larger,
// by brute force over permutations. cost[i][j] is the pairing cost.
inline std::vector<int> min_cost_matching(
    const std::vector<std::vector<std::int64_t>>& cost, std::int64_t* best) {
    const std::size_t rows = cost.size();
    const std::size_t cols = rows ? cost[0].size() : 0;
    if (rows > cols)
        throw ArgumentError("matching: more rows than columns");
    if (cols > kMatchingGuard)
        throw RefusalError("matching: exceeds brute-force size guard");
    std::vector<int> idx(cols);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> pick(idx.begin(), idx.end());
    *best = std::numeric_limits<std::int64_t>::max();
    std::vector<int> assign(rows, -1);
    do {
        std::int64_t c = 0;
        for (std::size_t i = 0; i < rows; ++i) c += cost[i][idx[i]];
        if (c < *best) {
            *best = c;
            for (std::size_t i = 0; i < rows; ++i) assign[i] = idx[i];
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    return assign;
}

}  // namespace detail

// Pairing of estimated sources onto true sources minimizing summed hop
// distance; -1 marks unmatched entries on the longer side.
struct SourceMatching {
    std::vector<int> est_to_true;  // index into true_sources, -1 if unmatched
    std::int64_t matched_distance = 0;
    std::size_t unmatched = 0;  // |k_est - k_true|
};

inline SourceMatching match_sources(const Graph& g, const NodeSet& estimated,
                                    const NodeSet& truth) {
    if (estimated.empty() || truth.empty())
        throw ArgumentError("match_sources: empty source set");
    std::vector<std::vector<std::int64_t>> dist(estimated.size());
    for (std::size_t i = 0; i < estimated.size(); ++i) {
        auto d = distances_from(g, estimated[i]);
        dist[i].resize(truth.size());
        for (std::size_t j = 0; j < truth.size(); ++j) {
            // pairs in different components cost more than any real path
            dist[i][j] = d[truth[j]] == kUnreached
                             ? static_cast<std::int64_t>(g.node_count())
                             : d[truth[j]];
        }
    }
    SourceMatching out;
    out.est_to_true.assign(estimated.size(), -1);
    out.unmatched = estimated.size() > truth.size()
                        ? estimated.size() - truth.size()
                        : truth.size() - estimated.size();
    std::int64_t best = 0;
    if (estimated.size() <= truth.size()) {
        out.est_to_true =
            detail::min_cost_matching(dist, &best);
    } else {
        // transpose so the smaller (true) side is injected
        std::vector<std::vector<std::int64_t>> t(truth.size());
        for (std::size_t j = 0; j < truth.size(); ++j) {
            t[j].resize(estimated.size());
            for (std::size_t i = 0; i < estimated.size(); ++i)
                t[j][i] = dist[i][j];
        }
        auto assign = detail::min_cost_matching(t, &best);
        for (std::size_t j = 0; j < truth.size(); ++j)
            out.est_to_true[static_cast<std::size_t>(assign[j])] =
                static_cast<int>(j);
    }
    out.matched_distance = best;
    return out;
}

// Distance-based estimation error: matched hop distances plus a penalty of
// eta per surplus or missing source, normalized by the true source count.
inline double error_distance(const Graph& g, const NodeSet& estimated,
                             const NodeSet& truth, double eta) {
    auto m = match_sources(g, estimated, truth);
    return (static_cast<double>(m.matched_distance) +
            eta * static_cast<double>(m.unmatched)) /
           static_cast<double>(truth.size());
}

// Worst-case fraction of a true region recovered by its matched estimated
// region. Regions are matched by their centers' min-cost matching; true
// regions without a partner score zero.
inline double region_covering(const Graph& g, const Partition& estimated,
                              const Partition& truth) {
    auto m = match_sources(g, estimated.centers, truth.centers);
    auto est_regs = estimated.regions();
    auto true_regs = truth.regions();
    double worst = 1.0;
    std::vector<char> covered(true_regs.size(), 0);
    for (std::size_t i = 0; i < est_regs.size(); ++i) {
        int j = m.est_to_true[i];
        if (j < 0) continue;
        covered[static_cast<std::size_t>(j)] = 1;
        const auto& a = est_regs[i];
        const auto& b = true_regs[static_cast<std::size_t>(j)];
        std::size_t common = 0;
        for (node v : b)
            if (std::binary_search(a.begin(), a.end(), v)) ++common;
        if (b.empty()) throw ArgumentError("region_covering: empty region");
        worst = std::min(worst, static_cast<double>(common) /
                                    static_cast<double>(b.size()));
    }
    for (char c : covered)
        if (!c) return 0.0;
    return worst;
}

}  // namespace episource

#endif
