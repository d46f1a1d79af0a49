#include <catch2/catch_amalgamated.hpp>

#include "episource/metrics.hpp"

using namespace episource;

namespace {

Graph path(std::size_t n) {
    Graph g(n);
    for (node i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

}  // namespace

TEST_CASE("match_sources") {
    Graph p10 = path(10);
    auto id = match_sources(p10, {4}, {4});
    REQUIRE(id.matched_distance == 0);
    REQUIRE(id.unmatched == 0);

    // crossed listing recovered by the permutation search
    auto crossed = match_sources(p10, {0, 9}, {0, 9});
    REQUIRE(crossed.matched_distance == 0);

    Graph p5 = path(5);
    auto inject = match_sources(p5, {1}, {0, 4});
    REQUIRE(inject.matched_distance == 1);  // 1 pairs with 0, not 4
    REQUIRE(inject.est_to_true == std::vector<int>{0});
    REQUIRE(inject.unmatched == 1);

    REQUIRE_THROWS_AS(match_sources(p5, {}, {0}), ArgumentError);
    REQUIRE_THROWS_AS(match_sources(p5, {0}, {}), ArgumentError);
}

TEST_CASE("match_sources respects the size guard") {
    Graph p10 = path(10);
    REQUIRE_THROWS_AS(
        match_sources(p10, {0, 1, 2, 3, 4, 5}, {6, 7, 8, 9}),
        RefusalError);
}

TEST_CASE("error distance") {
    Graph p5 = path(5);
    REQUIRE(error_distance(p5, {0, 4}, {0, 4}, 0.0) == 0.0);
    REQUIRE(error_distance(p5, {0, 4}, {0, 4}, 4.0) == 0.0);

    REQUIRE(error_distance(p5, {0}, {0, 4}, 0.0) == 0.0);
    REQUIRE(error_distance(p5, {0}, {0, 4}, 4.0) == Catch::Approx(2.0));

    REQUIRE(error_distance(p5, {0, 2}, {2}, 4.0) == Catch::Approx(4.0));

    // invariant to listing order via the matching
    REQUIRE(error_distance(p5, {4, 0}, {0, 4}, 7.0) ==
            error_distance(p5, {0, 4}, {4, 0}, 7.0));
}

TEST_CASE("region covering") {
    Graph p5 = path(5);
    Partition truth;
    truth.centers = {0, 4};
    truth.region_of = {0, 0, 0, 1, 1};

    SECTION("identical partitions") {
        REQUIRE(region_covering(p5, truth, truth) == 1.0);
    }

    SECTION("partial overlap") {
        // truth {0,1,2}/{3,4}, est {0,1}/{2,3,4} -> min(2/3, 2/2)
        Partition est;
        est.centers = {0, 4};
        est.region_of = {0, 0, 1, 1, 1};
        REQUIRE(region_covering(p5, est, truth) == Catch::Approx(2.0 / 3.0));
    }

    SECTION("unmatched truth region scores zero") {
        Partition est;
        est.centers = {0};
        est.region_of = {0, 0, 0, 0, 0};
        REQUIRE(region_covering(p5, est, truth) == 0.0);
    }

    SECTION("extra estimated regions are ignored") {
        Partition est;
        est.centers = {0, 2, 4};
        est.region_of = {0, 0, 1, 2, 2};
        double cover = region_covering(p5, est, truth);
        REQUIRE(cover >= 0.0);
        REQUIRE(cover <= 1.0);
    }
}
