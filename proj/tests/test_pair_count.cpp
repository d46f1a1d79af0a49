#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "episource/oracle.hpp"
#include "episource/pair_count.hpp"

using namespace episource;

namespace {

Graph path(std::size_t n) {
    Graph g(n);
    for (node i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

}  // namespace

TEST_CASE("descending prefix sums") {
    REQUIRE(descending_prefix_sums({1, 3, 2}) ==
            std::vector<std::int64_t>{3, 5, 6});
    REQUIRE(descending_prefix_sums({5}) == std::vector<std::int64_t>{5});
    REQUIRE(descending_prefix_sums({2, 2, 2}) ==
            std::vector<std::int64_t>{2, 4, 6});
    REQUIRE_THROWS_AS(descending_prefix_sums({}), ArgumentError);
}

TEST_CASE("pair count worked examples") {
    Graph p4 = path(4);
    REQUIRE(pair_count(p4, 0, 3).value() == Catch::Approx(2.0));

    Graph edge(2);
    edge.add_edge(0, 1);
    REQUIRE(pair_count(edge, 0, 1).log_value == Catch::Approx(0.0));

    auto memo = PairScoreTable::build(p4);
    REQUIRE_THROWS_AS(memo.log_pair_count(1, 1), ArgumentError);
}

TEST_CASE("pair count is symmetric") {
    Rng rng(23);
    for (int t = 0; t < 10; ++t) {
        Graph g = random_tree(3 + rng.below(7), rng);
        auto memo = PairScoreTable::build(g);
        for (node a = 0; a < g.node_count(); ++a)
            for (node b = a + 1; b < g.node_count(); ++b)
                REQUIRE(memo.log_pair_count(a, b) ==
                        memo.log_pair_count(b, a));
    }
}

TEST_CASE("path helpers") {
    Graph p5 = path(5);
    auto memo = PairScoreTable::build(p5);
    REQUIRE(memo.distance(0, 4) == 4);
    REQUIRE(memo.diameter() == 4);
    REQUIRE(memo.path_between(0, 3) == std::vector<node>{0, 1, 2, 3});
    REQUIRE(memo.path_between(3, 0) == std::vector<node>{3, 2, 1, 0});
    // subtree sizes along the full path of a 5-path from 1 to 3:
    // T_1 = {0,1}, T_2 = {2}, T_3 = {3,4}
    REQUIRE(memo.path_subtree_sizes(1, 3) ==
            std::vector<std::int64_t>{2, 1, 2});
}

TEST_CASE("path subtree sizes partition the tree") {
    Rng rng(29);
    for (int t = 0; t < 10; ++t) {
        std::size_t n = 4 + rng.below(8);
        Graph g = random_tree(n, rng);
        auto memo = PairScoreTable::build(g);
        for (node a = 0; a < n; ++a)
            for (node b = a + 1; b < n; ++b) {
                auto sizes = memo.path_subtree_sizes(a, b);
                std::int64_t on_path = 0;
                double excl = 0.0;
                for (std::int64_t s : sizes) on_path += s;
                // path subtrees cover every node exactly once
                REQUIRE(on_path == static_cast<std::int64_t>(n));
                (void)excl;
            }
    }
}

TEST_CASE("pair-count oracle on a small batch") {
    auto rep = check_lemma2(25, 9, 4242);
    INFO(rep.first_failure);
    REQUIRE(rep.ok());
}
