#ifndef EPISOURCE_PAIR_COUNT_HPP
#define EPISOURCE_PAIR_COUNT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <vector>

#include "episource/error.hpp"
#include "episource/graph.hpp"
#include "episource/logsum.hpp"
#include "episource/tree_count.hpp"

namespace episource {

// Sorts descending and returns prefix sums (I*_1, ..., I*_p).
inline std::vector<std::int64_t> descending_prefix_sums(
    std::vector<std::int64_t> sizes) {
    if (sizes.empty())
        throw ArgumentError("descending_prefix_sums: empty input");
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    for (std::size_t i = 1; i < sizes.size(); ++i) sizes[i] += sizes[i - 1];
    return sizes;
}

// Memoized q-values and path-subtree sizes for every source pair of a tree,
// built in distance-ascending sweep order. Entries are keyed canonically
// (smaller endpoint first); q is symmetric so the canonical key is sound.
//
// For a pair (s1, s2) with path (s1, u_1, ..., u_{d-1}, s2):
//   log_q       = log q(u_1, u_{d-1}; s1, s2)
//   t_path      = |T_{rho(u_1, u_{d-1})}(s1, s2)|   (sum of interior sizes)
//   log_g_excl  = log prod_{u not on path} |T_u(s1, s2)|
class PairScoreTable {
public:
    static PairScoreTable build(const Graph& g_n, node root = 0) {
        PairScoreTable t;
        t.g_ = &g_n;
        t.n_ = g_n.node_count();
        t.table_ = SubtreeTable::build(g_n, root);
        const std::size_t n = t.n_;
        if (n < 2)
            throw ArgumentError("pair table: need at least 2 nodes");

        if (n > 0xffff)
            throw RefusalError(
                "pair table: quadratic memo capped at 65535 nodes");
        t.dist_.assign(n * n, 0);
        t.next_.assign(n * n, 0);
        std::size_t max_d = 0;
        for (node r = 0; r < n; ++r) {
            // BFS from r; next hop of v toward r is v's BFS parent.
            std::deque<node> q{r};
            std::vector<char> seen(n, 0);
            seen[r] = 1;
            while (!q.empty()) {
                node v = q.front();
                q.pop_front();
                for (node w : g_n.neighbors(v))
                    if (!seen[w]) {
                        seen[w] = 1;
                        t.dist_[w * n + r] =
                            static_cast<std::uint16_t>(t.dist_[v * n + r] + 1);
                        t.next_[w * n + r] = static_cast<std::uint16_t>(v);
                        max_d = std::max<std::size_t>(max_d,
                                                      t.dist_[w * n + r]);
                        q.push_back(w);
                    }
            }
        }
        t.diameter_ = static_cast<int>(max_d);

        t.log_q_.assign(n * n, 0.0);
        t.t_path_.assign(n * n, 0);
        t.log_g_excl_.assign(n * n, 0.0);

        std::vector<std::vector<std::pair<node, node>>> by_dist(max_d + 1);
        for (node a = 0; a < n; ++a)
            for (node b = a + 1; b < n; ++b)
                by_dist[t.dist_[a * n + b]].emplace_back(a, b);

        for (std::size_t d = 1; d <= max_d; ++d) {
            for (auto [s1, s2] : by_dist[d]) {
                const std::size_t key = t.key(s1, s2);
                if (d == 1) {
                    t.log_q_[key] = 0.0;  // empty interior path: q = 1
                    t.t_path_[key] = 0;
                    t.log_g_excl_[key] = t.table_.log_g_sum(s1) -
                                         t.table_.log_g(s2, s1) +
                                         t.table_.log_g_sum(s2) -
                                         t.table_.log_g(s1, s2);
                    continue;
                }
                const node w = t.next_hop(s2, s1);  // u_{d-1}
                const node before_w = t.next_hop(w, s1);
                const std::int64_t t_w =
                    static_cast<std::int64_t>(n) - t.table_.f(before_w, w) -
                    t.table_.f(s2, w);
                const std::size_t left = t.key(s1, w);  // pair at distance d-1
                t.log_g_excl_[key] = t.log_g_excl_[left] +
                                     t.table_.log_g_sum(s2) -
                                     t.table_.log_g(s2, w) -
                                     t.table_.log_g(w, s2);
                if (d == 2) {
                    t.t_path_[key] = t_w;
                    t.log_q_[key] = -std::log(static_cast<double>(t_w));
                } else {
                    const node u1 = t.next_hop(s1, s2);
                    const std::size_t right = t.key(u1, s2);
                    t.t_path_[key] = t.t_path_[left] + t_w;
                    t.log_q_[key] =
                        log_add_exp(t.log_q_[right], t.log_q_[left]) -
                        std::log(static_cast<double>(t.t_path_[key]));
                }
            }
        }
        return t;
    }

    std::size_t size() const { return n_; }
    int diameter() const { return diameter_; }
    const SubtreeTable& subtree_table() const { return table_; }

    int distance(node a, node b) const { return dist_[a * n_ + b]; }
    node next_hop(node from, node toward) const {
        return static_cast<node>(next_[from * n_ + toward]);
    }

    double log_q(node s1, node s2) const { return log_q_[key(s1, s2)]; }
    std::int64_t path_subtree_size(node s1, node s2) const {
        return t_path_[key(s1, s2)];
    }
    double log_g_excluded(node s1, node s2) const {
        return log_g_excl_[key(s1, s2)];
    }

    // log C(s1, s2; G_n) per the two-source decomposition.
    double log_pair_count(node s1, node s2) const {
        if (s1 == s2) throw ArgumentError("pair_count: sources must differ");
        const double n = static_cast<double>(n_);
        return log_factorial(n - 2.0) + log_q(s1, s2) -
               log_g_excluded(s1, s2);
    }

    // Nodes of the path (s1, u_1, ..., u_{d-1}, s2), endpoints included.
    std::vector<node> path_between(node s1, node s2) const {
        std::vector<node> p{s1};
        node v = s1;
        while (v != s2) {
            v = next_hop(v, s2);
            p.push_back(v);
        }
        return p;
    }

    // |T_u(s1, s2)| for every u on the path, endpoints included.
    std::vector<std::int64_t> path_subtree_sizes(node s1, node s2) const {
        auto p = path_between(s1, s2);
        std::vector<std::int64_t> sizes(p.size());
        const std::int64_t n = static_cast<std::int64_t>(n_);
        for (std::size_t i = 0; i < p.size(); ++i) {
            std::int64_t s = n;
            if (i > 0) s -= table_.f(p[i - 1], p[i]);
            if (i + 1 < p.size()) s -= table_.f(p[i + 1], p[i]);
            sizes[i] = s;
        }
        return sizes;
    }

private:
    std::size_t key(node a, node b) const {
        return a < b ? a * n_ + b : b * n_ + a;
    }

    const Graph* g_ = nullptr;
    std::size_t n_ = 0;
    int diameter_ = 0;
    SubtreeTable table_;
    std::vector<std::uint16_t> dist_;
    std::vector<std::uint16_t> next_;
    std::vector<double> log_q_;
    std::vector<std::int64_t> t_path_;
    std::vector<double> log_g_excl_;
};

inline LogCount pair_count(const PairScoreTable& memo, node s1, node s2) {
    return LogCount{memo.log_pair_count(s1, s2)};
}

inline LogCount pair_count(const Graph& g_n, node s1, node s2) {
    return pair_count(PairScoreTable::build(g_n), s1, s2);
}

}  // namespace episource

#endif
