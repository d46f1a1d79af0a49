#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "episource/oracle.hpp"
#include "episource/tree_count.hpp"

using namespace episource;

namespace {

Graph path(std::size_t n) {
    Graph g(n);
    for (node i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph star(std::size_t leaves) {
    Graph g(leaves + 1);
    for (node i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

}  // namespace

TEST_CASE("subtree table worked examples") {
    Graph p3 = path(3);
    auto t = SubtreeTable::build(p3);
    REQUIRE(t.f(0, 1) == 1);
    REQUIRE(t.f(1, 0) == 2);
    REQUIRE(t.log_g(1, 0) == Catch::Approx(std::log(2.0)));
    REQUIRE(t.log_g(0, 1) == Catch::Approx(0.0));

    Graph edge(2);
    edge.add_edge(0, 1);
    auto te = SubtreeTable::build(edge);
    REQUIRE(te.f(0, 1) == 1);
    REQUIRE(te.f(1, 0) == 1);
    REQUIRE(te.log_g(0, 1) == 0.0);
    REQUIRE(te.log_g(1, 0) == 0.0);

    Graph s3 = star(3);
    auto ts = SubtreeTable::build(s3);
    REQUIRE(ts.f(0, 1) == 3);
    REQUIRE(ts.log_g(0, 1) == Catch::Approx(std::log(3.0)));
}

TEST_CASE("f values split the tree across every edge and root choice") {
    Rng rng(7);
    for (int t = 0; t < 25; ++t) {
        std::size_t n = 2 + rng.below(20);
        Graph g = random_tree(n, rng);
        node root = static_cast<node>(rng.below(n));
        auto table = SubtreeTable::build(g, root);
        for (node u = 0; u < n; ++u)
            for (node w : g.neighbors(u))
                REQUIRE(table.f(w, u) + table.f(u, w) ==
                        static_cast<std::int64_t>(n));
    }
}

TEST_CASE("table values independent of build root") {
    Rng rng(17);
    Graph g = random_tree(12, rng);
    auto t0 = SubtreeTable::build(g, 0);
    auto t5 = SubtreeTable::build(g, 5);
    for (node u = 0; u < 12; ++u)
        for (node w : g.neighbors(u)) {
            REQUIRE(t0.f(w, u) == t5.f(w, u));
            REQUIRE(t0.log_g(w, u) ==
                    Catch::Approx(t5.log_g(w, u)).margin(1e-12));
        }
}

TEST_CASE("single source count worked examples") {
    Graph p3 = path(3);
    auto t = SubtreeTable::build(p3);
    REQUIRE(single_source_count(t, 1).log_value ==
            Catch::Approx(std::log(2.0)));
    REQUIRE(single_source_count(t, 0).log_value ==
            Catch::Approx(0.0).margin(1e-12));

    Graph s3 = star(3);
    REQUIRE(single_source_count(s3, 0).log_value ==
            Catch::Approx(std::log(6.0)));
    REQUIRE_THROWS_AS(single_source_count(SubtreeTable::build(s3), 9),
                      ArgumentError);
}

TEST_CASE("non-tree input rejected") {
    Graph cyc(3);
    cyc.add_edge(0, 1);
    cyc.add_edge(1, 2);
    cyc.add_edge(2, 0);
    REQUIRE_THROWS_AS(SubtreeTable::build(cyc), StructureError);
    Graph disc(4);
    disc.add_edge(0, 1);
    disc.add_edge(2, 3);
    REQUIRE_THROWS_AS(SubtreeTable::build(disc), StructureError);
}

TEST_CASE("single-source count oracle on a small batch") {
    auto rep = check_lemma1(40, 9, 5150);
    INFO(rep.first_failure);
    REQUIRE(rep.ok());
    REQUIRE(rep.fail == 0);
}
