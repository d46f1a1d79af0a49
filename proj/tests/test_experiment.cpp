#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>

#include "episource/experiment.hpp"

using namespace episource;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.family = "regular-tree";
    cfg.degree = 3;
    cfg.depth = 6;
    cfg.k_true = 2;
    cfg.stop_n = 60;
    cfg.runs = 4;
    cfg.k_max = 3;
    cfg.tau = 3;
    cfg.separation = 6;
    cfg.seed = 2024;
    return cfg;
}

std::string csv_without_timings(const ExperimentReport& report) {
    std::ostringstream out;
    write_report_csv(report, out);
    std::istringstream in(out.str());
    std::ostringstream masked;
    std::string line;
    while (std::getline(in, line)) {
        auto cut = line.rfind(',');
        masked << line.substr(0, cut) << '\n';
    }
    return masked.str();
}

}  // namespace

TEST_CASE("run_experiment smoke and row shape") {
    ExperimentConfig cfg;
    cfg.family = "regular-tree";
    cfg.degree = 2;
    cfg.depth = 4;
    cfg.k_true = 1;
    cfg.k_max = 1;
    cfg.stop_n = 5;
    cfg.runs = 1;
    auto report = run_experiment(cfg);
    REQUIRE(report.rows.size() == cfg.algorithms.size());
    for (const auto& r : report.rows) {
        INFO(r.algo << ": " << r.error);
        REQUIRE(r.error.empty());
        REQUIRE(r.k_true == 1);
        REQUIRE(r.delta_eta0 >= 0.0);
        REQUIRE(r.min_cover >= 0.0);
        REQUIRE(r.min_cover <= 1.0);
    }
}

TEST_CASE("run_experiment determinism") {
    auto cfg = small_config();
    auto a = run_experiment(cfg);
    auto b = run_experiment(cfg);
    REQUIRE(csv_without_timings(a) == csv_without_timings(b));
}

TEST_CASE("parallel workers produce identical rows") {
    auto cfg = small_config();
    auto serial = run_experiment(cfg);
    cfg.jobs = 3;
    auto parallel = run_experiment(cfg);
    REQUIRE(csv_without_timings(serial) == csv_without_timings(parallel));
}

TEST_CASE("aggregates recomputable from rows") {
    auto cfg = small_config();
    auto report = run_experiment(cfg);
    auto again = aggregate_rows(cfg.algorithms, report.rows);
    REQUIRE(again.size() == report.aggregates.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
        REQUIRE(again[i].algo == report.aggregates[i].algo);
        REQUIRE(again[i].rows == report.aggregates[i].rows);
        REQUIRE(again[i].count_accuracy == report.aggregates[i].count_accuracy);
        REQUIRE(again[i].mean_delta_eta0 ==
                report.aggregates[i].mean_delta_eta0);
        REQUIRE(again[i].mean_cover == report.aggregates[i].mean_cover);
    }
}

TEST_CASE("per-run failures become error rows") {
    ExperimentConfig cfg;
    cfg.family = "regular-tree";
    cfg.degree = 2;
    cfg.depth = 3;  // 7 nodes
    cfg.k_true = 1;
    cfg.k_max = 1;
    cfg.stop_n = 100;  // impossible: more than the graph holds
    cfg.runs = 2;
    auto report = run_experiment(cfg);
    REQUIRE(report.rows.size() == 2 * cfg.algorithms.size());
    for (const auto& r : report.rows) REQUIRE_FALSE(r.error.empty());
    for (const auto& a : report.aggregates) REQUIRE(a.rows == 0);
}

TEST_CASE("csv schema") {
    auto cfg = small_config();
    cfg.runs = 1;
    auto report = run_experiment(cfg);
    std::ostringstream out;
    write_report_csv(report, out);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    REQUIRE(header ==
            "run,family,k_true,k_est,algo,delta_eta0,delta_etadiam,"
            "min_cover,diam_gn,ms_elapsed");
    std::string row;
    std::size_t rows = 0;
    while (std::getline(in, row)) {
        ++rows;
        REQUIRE(std::count(row.begin(), row.end(), ',') == 9);
    }
    REQUIRE(rows == report.rows.size());
}

TEST_CASE("geometric and small-world families run") {
    ExperimentConfig cfg;
    cfg.family = "geometric-tree";
    cfg.geo = GeoTreeParams{1.0, 2.0, 2.0, 4, 5, 6, 0, 0};
    cfg.interior_depth = 3;
    cfg.k_true = 2;
    cfg.separation = 8;
    cfg.stop_n = 80;
    cfg.runs = 2;
    cfg.k_max = 3;
    cfg.tau = 4;
    cfg.seed = 9;
    auto geo = run_experiment(cfg);
    for (const auto& r : geo.rows) {
        INFO(r.algo << ": " << r.error);
        REQUIRE(r.error.empty());
    }

    cfg.family = "small-world";
    cfg.n = 200;
    cfg.ws_k = 4;
    cfg.ws_p = 0.1;
    cfg.stop_n = 60;
    cfg.separation = 4;
    cfg.algorithms = {"msep-bfs", "nsse-known"};
    auto sw = run_experiment(cfg);
    for (const auto& r : sw.rows) {
        INFO(r.algo << ": " << r.error);
        REQUIRE(r.error.empty());
    }
}

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    cfg.family = "nope";
    REQUIRE_THROWS_AS(run_experiment(cfg), ArgumentError);
    cfg = ExperimentConfig{};
    cfg.algorithms = {"mystery"};
    REQUIRE_THROWS_AS(run_experiment(cfg), ArgumentError);
    cfg = ExperimentConfig{};
    cfg.runs = 0;
    REQUIRE_THROWS_AS(run_experiment(cfg), ArgumentError);
}
