#ifndef EPISOURCE_ESTIMATORS_HPP
#define EPISOURCE_ESTIMATORS_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "episource/error.hpp"
#include "episource/graph.hpp"
#include "episource/logsum.hpp"
#include "episource/pair_count.hpp"
#include "episource/sequence.hpp"
#include "episource/tree_count.hpp"

namespace episource {

struct SourceEstimate {
    NodeSet nodes;
    double log_score = kLogZero;
    std::string algo;
};

// Regularity constants of a polynomially growing tree plus the Q-factor
// parameter delta and the source-degree bounds.
struct GeoParams {
    double alpha = 1.0;
    double b = 1.0;
    double c = 1.0;
    int d_min = 3;
    int d_max = 3;
    double delta = 1.0;

    void validate() const {
        if (b > c) throw ArgumentError("geo params: requires b <= c");
        if (d_min < 2 || d_min > d_max)
            throw ArgumentError("geo params: need 2 <= d_min <= d_max");
        if (delta <= 0.0) throw ArgumentError("geo params: delta must be > 0");
    }
};

namespace detail {

// Tolerance band treating mathematically equal log scores computed along
// different paths as ties; ties resolve to the smaller node / pair.
inline constexpr double kScoreRelTol = 1e-9;

inline bool score_improves(double cand, double best) {
    const double tol =
        kScoreRelTol * std::max({1.0, std::fabs(cand), std::fabs(best)});
    return cand > best + tol;
}
inline bool score_ties(double cand, double best) {
    const double tol =
        kScoreRelTol * std::max({1.0, std::fabs(cand), std::fabs(best)});
    return std::fabs(cand - best) <= tol;
}

}  // namespace detail

// Single-source estimate on a tree: argmax_s C(s, G_n), smallest id wins
// ties. O(n) after the two-pass table build.
inline SourceEstimate sse_tree(const Graph& g_n) {
    auto table = SubtreeTable::build(g_n);
    SourceEstimate best{{0}, single_source_count(table, 0).log_value,
                        "sse"};
    for (node v = 1; v < g_n.node_count(); ++v) {
        double score = single_source_count(table, v).log_value;
        if (detail::score_improves(score, best.log_score)) {
            best.nodes = {v};
            best.log_score = score;
        }
    }
    return best;
}

// Per-node scores of the BFS-tree heuristic on a general graph:
// score(v) = log P(sigma_v | v) + log C(v, T_bfs(v)), with the sequence
// probability counted in the full graph g_n.
inline std::vector<double> sse_bfs_scores(const Graph& g_n) {
    if (!g_n.is_connected())
        throw StructureError("sse_bfs: input graph is disconnected");
    std::vector<double> scores(g_n.node_count(), kLogZero);
    for (node v = 0; v < g_n.node_count(); ++v) {
        auto bfs = bfs_tree(g_n, v);
        auto table = SubtreeTable::build(bfs.tree, v);
        std::vector<node> seq(bfs.order.begin() + 1, bfs.order.end());
        scores[v] = log_sequence_probability(g_n, {v}, seq) +
                    single_source_count(table, v).log_value;
    }
    return scores;
}

inline SourceEstimate sse_bfs(const Graph& g_n) {
    auto scores = sse_bfs_scores(g_n);
    SourceEstimate best{{0}, scores[0], "sse-bfs"};
    for (node v = 1; v < scores.size(); ++v)
        if (detail::score_improves(scores[v], best.log_score)) {
            best.nodes = {v};
            best.log_score = scores[v];
        }
    return best;
}

namespace detail {

inline bool pair_lex_less(node a1, node a2, node b1, node b2) {
    if (a1 > a2) std::swap(a1, a2);
    if (b1 > b2) std::swap(b1, b2);
    return a1 != b1 ? a1 < b1 : a2 < b2;
}

template <typename Score>
SourceEstimate pair_sweep(const PairScoreTable& memo, const char* algo,
                          Score&& score_fn) {
    const std::size_t n = memo.size();
    SourceEstimate best{{}, kLogZero, algo};
    for (node a = 0; a < n; ++a)
        for (node b = a + 1; b < n; ++b) {
            double score = score_fn(a, b);
            if (best.nodes.empty() ||
                score_improves(score, best.log_score)) {
                best.nodes = {a, b};
                best.log_score = score;
            } else if (score_ties(score, best.log_score) &&
                       pair_lex_less(a, b, best.nodes[0], best.nodes[1])) {
                best.nodes = {a, b};
                best.log_score = std::max(best.log_score, score);
            }
        }
    return best;
}

}  // namespace detail

// Two-source estimate on a tree: argmax over pairs of C(s1, s2; G_n) via
// the distance-ascending memoized sweep. Lexicographically smallest pair
// wins ties.
inline SourceEstimate tse(const Graph& g_n) {
    if (g_n.node_count() < 2)
        throw ArgumentError("tse: need at least 2 nodes");
    auto memo = PairScoreTable::build(g_n);
    return detail::pair_sweep(memo, "tse", [&](node a, node b) {
        return memo.log_pair_count(a, b);
    });
}

inline SourceEstimate tse(const PairScoreTable& memo) {
    return detail::pair_sweep(memo, "tse", [&](node a, node b) {
        return memo.log_pair_count(a, b);
    });
}

// Geometric-tree two-source estimate: the exact path term is replaced by
// Q(s1, s2) = [2(1+delta)]^{p-1} prod_i 1/I*_i built from the descending
// prefix sums of the path subtree sizes.
inline SourceEstimate geometric_tse(const Graph& g_n, const GeoParams& geo) {
    geo.validate();
    if (g_n.node_count() < 2)
        throw ArgumentError("geometric_tse: need at least 2 nodes");
    auto memo = PairScoreTable::build(g_n);
    const double n = static_cast<double>(g_n.node_count());
    const double log_2d = std::log(2.0 * (1.0 + geo.delta));
    return detail::pair_sweep(memo, "geo-tse", [&](node a, node b) {
        auto prefix = descending_prefix_sums(memo.path_subtree_sizes(a, b));
        double log_istar = 0.0;
        for (std::int64_t s : prefix)
            log_istar += std::log(static_cast<double>(s));
        const double p = static_cast<double>(prefix.size());
        return log_factorial(n) + (p - 1.0) * log_2d - log_istar -
               memo.log_g_excluded(a, b);
    });
}

// Admissible open interval for delta, with the feasibility condition
// d_min >= 3/2 + (c/b) sqrt(2 d_max).
inline std::pair<double, double> delta_interval(const GeoParams& geo) {
    if (geo.b <= 0 || geo.c <= 0 || geo.b > geo.c || geo.d_min > geo.d_max ||
        geo.d_min < 1)
        throw ArgumentError("delta_interval: invalid constants");
    const double low =
        geo.c * geo.d_max / (geo.b * (geo.d_min - 1.0)) - 1.0;
    const double high = geo.b * (geo.d_min - 2.0) / (2.0 * geo.c) - 1.0;
    const double need = 1.5 + geo.c / geo.b * std::sqrt(2.0 * geo.d_max);
    if (geo.d_min < need || low >= high)
        throw InfeasibleError(
            "delta_interval: empty interval (" + std::to_string(low) + ", " +
            std::to_string(high) + ") or degree condition violated");
    return {low, high};
}

// Naive k-source baseline: the k nodes with the largest single-source
// scores (tree) or BFS-heuristic scores (general graphs).
inline SourceEstimate nsse(const Graph& g_n, std::size_t k) {
    if (k < 1 || k > g_n.node_count())
        throw ArgumentError("nsse: k out of range");
    std::vector<double> scores;
    if (g_n.is_tree()) {
        auto table = SubtreeTable::build(g_n);
        scores.resize(g_n.node_count());
        for (node v = 0; v < g_n.node_count(); ++v)
            scores[v] = single_source_count(table, v).log_value;
    } else {
        scores = sse_bfs_scores(g_n);
    }
    std::vector<node> ids(g_n.node_count());
    std::iota(ids.begin(), ids.end(), 0);
    std::stable_sort(ids.begin(), ids.end(), [&](node a, node b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    SourceEstimate out{{}, 0.0, "nsse"};
    out.nodes.assign(ids.begin(), ids.begin() + static_cast<long>(k));
    for (node v : out.nodes) out.log_score += scores[v];
    canonicalize(out.nodes);
    return out;
}

}  // namespace episource

#endif
