#include <catch2/catch_amalgamated.hpp>

#include "episource/experiment.hpp"
#include "episource/msep.hpp"
#include "episource/oracle.hpp"

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

// two stars joined by a path between their centers
Graph double_star(std::size_t leaves, std::size_t gap, node* c1, node* c2) {
    Graph g(2 * leaves + gap);
    node left = 0;
    for (node i = 1; i <= leaves; ++i) g.add_edge(left, i);
    node prev = left;
    for (node i = 0; i < gap; ++i) {
        node w = static_cast<node>(leaves + 1 + i);
        g.add_edge(prev, w);
        prev = w;
    }
    node right = prev;
    for (node i = 0; i < leaves - 1; ++i) {
        node w = static_cast<node>(leaves + gap + 1 + i);
        g.add_edge(right, w);
    }
    *c1 = left;
    *c2 = right;
    return g;
}

}  // namespace

TEST_CASE("voronoi partition worked examples") {
    Graph p5 = path(5);
    auto p = voronoi_partition(p5, {0, 4});
    REQUIRE(p.region_of == std::vector<int>{0, 0, 0, 1, 1});
    REQUIRE(p.regions()[0] == NodeSet{0, 1, 2});

    auto whole = voronoi_partition(p5, {3});
    for (node v = 0; v < 5; ++v) REQUIRE(whole.region_of[v] == 0);

    Graph s4 = star(4);
    auto sp = voronoi_partition(s4, {1, 2});
    REQUIRE(sp.region_of[0] == 0);
    REQUIRE(sp.region_of[1] == 0);
    REQUIRE(sp.region_of[2] == 1);
    REQUIRE(sp.region_of[3] == 0);
    REQUIRE(sp.region_of[4] == 0);

    REQUIRE_THROWS_AS(voronoi_partition(p5, {}), ArgumentError);
    REQUIRE_THROWS_AS(voronoi_partition(p5, {9}), ArgumentError);
}

TEST_CASE("voronoi property and connectivity on random graphs") {
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = 5 + rng.below(25);
        Graph g = random_tree(n, rng);
        std::size_t k = 1 + rng.below(3);
        NodeSet centers;
        while (centers.size() < k) {
            node c = static_cast<node>(rng.below(n));
            bool dup = false;
            for (node x : centers) dup |= x == c;
            if (!dup) centers.push_back(c);
        }
        canonicalize(centers);
        auto p = voronoi_partition(g, centers);
        REQUIRE(voronoi_property_holds(g, p));
        REQUIRE(partition_regions_connected(g, p));
        // brute-force nearest-center agreement
        std::vector<std::vector<int>> dist;
        for (node c : centers) dist.push_back(distances_from(g, c));
        for (node v = 0; v < n; ++v) {
            int own = dist[static_cast<std::size_t>(p.region_of[v])][v];
            for (std::size_t i = 0; i < centers.size(); ++i)
                REQUIRE(own <= dist[i][v]);
        }
    }
}

TEST_CASE("infection partitioning fixed points") {
    node c1, c2;
    Graph ds = double_star(4, 4, &c1, &c2);
    MsepConfig cfg;
    cfg.k_max = 2;
    auto res = infection_partitioning(ds, {c1, c2}, cfg);
    REQUIRE(res.sources == NodeSet{c1, c2});
    REQUIRE(voronoi_property_holds(ds, res.regions));

    // single region degenerates to one SSE call
    Graph p7 = path(7);
    auto one = infection_partitioning(p7, {0}, cfg);
    REQUIRE(one.sources == sse_tree(p7).nodes);

    auto ends = infection_partitioning(p7, {0, 6}, cfg);
    // each half of the 7-path relocates to its median
    REQUIRE(ends.sources == NodeSet{1, 5});
}

TEST_CASE("msep recovers two separated hubs") {
    node c1, c2;
    Graph ds = double_star(6, 6, &c1, &c2);
    MsepConfig cfg;
    cfg.k_max = 2;
    cfg.tau = 2;
    cfg.seed = 3;
    auto res = msep(ds, cfg);
    REQUIRE(res.k_final == 2);
    REQUIRE(res.sources == NodeSet{c1, c2});
    REQUIRE(res.merge_log.empty());
    REQUIRE(voronoi_property_holds(ds, res.regions));
}

TEST_CASE("msep merges a single hub down to one source") {
    Graph s = star(8);
    MsepConfig cfg;
    cfg.k_max = 3;
    cfg.tau = 3;
    cfg.seed = 11;
    auto res = msep(s, cfg);
    REQUIRE(res.k_final == 1);
    REQUIRE(res.sources == NodeSet{0});
    REQUIRE(res.merge_log.size() == 2);
    for (const auto& ev : res.merge_log)
        REQUIRE(ev.pair_distance < cfg.tau);
}

TEST_CASE("msep k_max one is a single SSE") {
    Graph p9 = path(9);
    MsepConfig cfg;
    cfg.k_max = 1;
    auto res = msep(p9, cfg);
    REQUIRE(res.k_final == 1);
    REQUIRE(res.sources == sse_tree(p9).nodes);
    REQUIRE_THROWS_AS(msep(Graph(0), cfg), StructureError);
}

TEST_CASE("msep rejects non-trees, msep_bfs handles them") {
    Graph cyc(4);
    for (node i = 0; i < 4; ++i) cyc.add_edge(i, (i + 1) % 4);
    MsepConfig cfg;
    cfg.k_max = 2;
    cfg.tau = 2;
    cfg.seed = 5;
    REQUIRE_THROWS_AS(msep(cyc, cfg), StructureError);
    auto res = msep_bfs(cyc, cfg);
    REQUIRE(res.k_final >= 1);
    REQUIRE(voronoi_property_holds(cyc, res.regions));
}

TEST_CASE("msep_bfs coincides with msep on trees") {
    Rng rng(19);
    MsepConfig cfg;
    cfg.k_max = 2;
    cfg.tau = 2;
    for (int t = 0; t < 20; ++t) {
        cfg.seed = 100 + static_cast<std::uint64_t>(t);
        Graph g = random_tree(8 + rng.below(15), rng);
        auto a = msep(g, cfg);
        auto b = msep_bfs(g, cfg);
        REQUIRE(a.k_final == b.k_final);
        REQUIRE(a.sources == b.sources);
    }
}

TEST_CASE("msep determinism") {
    node c1, c2;
    Graph ds = double_star(5, 5, &c1, &c2);
    MsepConfig cfg;
    cfg.k_max = 3;
    cfg.tau = 3;
    cfg.seed = 77;
    auto a = msep(ds, cfg);
    auto b = msep(ds, cfg);
    REQUIRE(a.sources == b.sources);
    REQUIRE(a.regions.region_of == b.regions.region_of);
}
