#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "episource/cli.hpp"

using namespace episource;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("cli_test_" + name) {
        std::ofstream f(path);
        f << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::string mask_timing_column(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) out << line.substr(0, line.rfind(',')) << '\n';
    return out.str();
}

}  // namespace

TEST_CASE("help and usage errors") {
    REQUIRE(cli({"--help"}).code == 0);
    REQUIRE(cli({"gen", "--help"}).code == 0);
    auto bad = cli({"frobnicate"});
    REQUIRE(bad.code == 1);
    auto unknown_flag = cli({"gen", "--family", "regular-tree", "--wat", "3"});
    REQUIRE(unknown_flag.code == 1);
    auto missing = cli({"estimate"});
    REQUIRE(missing.code == 1);
}

TEST_CASE("gen emits a parseable edge list") {
    auto run = cli({"gen", "--family", "regular-tree", "--degree", "3",
                    "--depth", "3"});
    REQUIRE(run.code == 0);
    Graph g = load_edge_list(run.out);
    REQUIRE(g.is_tree());
    REQUIRE(g.node_count() == 22);

    auto geo = cli({"gen", "--family", "geometric-tree", "--alpha", "1",
                    "--b", "1", "--c", "2", "--depth", "4", "--seed", "5"});
    REQUIRE(geo.code == 0);
    REQUIRE(load_edge_list(geo.out).is_tree());

    auto sw = cli({"gen", "--family", "small-world", "--n", "30", "--k", "4",
                   "--p", "0.1", "--seed", "1"});
    REQUIRE(sw.code == 0);
    REQUIRE(load_edge_list(sw.out).node_count() == 30);

    REQUIRE(cli({"gen", "--family", "mystery"}).code == 2);
}

TEST_CASE("simulate outputs the documented JSON document") {
    TempFile graph("path.txt", "0 1\n1 2\n2 3\n");
    auto run = cli({"simulate", "--graph", graph.path, "--sources", "0",
                    "--stop-n", "3", "--seed", "7"});
    REQUIRE(run.code == 0);
    auto j = nlohmann::json::parse(run.out);
    REQUIRE(j["sources"] == nlohmann::json::array({0}));
    REQUIRE(j["order"].size() == 3);
    REQUIRE(j["parent"].size() == 2);
    REQUIRE(j["elapsed"].get<double>() > 0.0);
    REQUIRE(j["order"] == nlohmann::json::array({0, 1, 2}));
    REQUIRE(j["parent"]["1"] == 0);
}

TEST_CASE("estimate sse on a non-tree exits 2") {
    TempFile graph("cycle.txt", "0 1\n1 2\n2 0\n");
    auto run = cli({"estimate", "--graph", graph.path, "--algo", "sse"});
    REQUIRE(run.code == 2);
    REQUIRE(run.err.find("input is not a tree") != std::string::npos);
    auto bfs = cli({"estimate", "--graph", graph.path, "--algo", "sse-bfs"});
    REQUIRE(bfs.code == 0);
}

TEST_CASE("estimate emits SourceEstimate JSON") {
    TempFile graph("star.txt", "0 1\n0 2\n0 3\n");
    auto run = cli({"estimate", "--graph", graph.path, "--algo", "sse"});
    REQUIRE(run.code == 0);
    auto j = nlohmann::json::parse(run.out);
    REQUIRE(j["algo"] == "sse");
    REQUIRE(j["nodes"] == nlohmann::json::array({0}));
    REQUIRE(j["log_score"].get<double>() ==
            Catch::Approx(std::log(6.0)));
}

TEST_CASE("estimate with an infected subset remaps node ids") {
    TempFile graph("path6.txt", "0 1\n1 2\n2 3\n3 4\n4 5\n");
    TempFile infected("inf.txt", "2\n3\n4\n");
    auto run = cli({"estimate", "--graph", graph.path, "--infected",
                    infected.path, "--algo", "sse"});
    REQUIRE(run.code == 0);
    auto j = nlohmann::json::parse(run.out);
    REQUIRE(j["nodes"] == nlohmann::json::array({3}));
}

TEST_CASE("estimate msep emits the partition document") {
    TempFile graph("dstar.txt",
                   "0 1\n0 2\n0 3\n0 4\n4 5\n5 6\n6 7\n7 8\n7 9\n7 10\n");
    auto run = cli({"estimate", "--graph", graph.path, "--algo", "msep",
                    "--k-max", "2", "--tau", "2", "--seed", "3"});
    REQUIRE(run.code == 0);
    auto j = nlohmann::json::parse(run.out);
    REQUIRE(j.contains("sources"));
    REQUIRE(j.contains("regions"));
    REQUIRE(j.contains("k_final"));
    REQUIRE(j.contains("merge_log"));
    REQUIRE(j["regions"].size() == j["k_final"].get<std::size_t>());
}

TEST_CASE("oracle subcommand") {
    auto fig = cli({"oracle", "--check", "figure1"});
    REQUIRE(fig.code == 0);
    REQUIRE(fig.out.find("figure1") != std::string::npos);
    REQUIRE(fig.out.find("0 failed") != std::string::npos);
    REQUIRE(cli({"oracle", "--check", "nonsense"}).code == 1);
}

TEST_CASE("benchmark determinism modulo the timing column") {
    TempFile cfg("bench.json", R"({
        "family": "regular-tree", "degree": 3, "depth": 5,
        "k_true": 1, "k_max": 2, "stop_n": 20, "runs": 2,
        "tau": 3, "separation": 4
    })");
    auto a = cli({"benchmark", "--config", cfg.path, "--seed", "1"});
    auto b = cli({"benchmark", "--config", cfg.path, "--seed", "1"});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    REQUIRE(mask_timing_column(a.out) == mask_timing_column(b.out));
    REQUIRE(a.out.rfind("run,family,", 0) == 0);

    auto json_run =
        cli({"benchmark", "--config", cfg.path, "--seed", "1", "--format",
             "json"});
    REQUIRE(json_run.code == 0);
    auto j = nlohmann::json::parse(json_run.out);
    REQUIRE(j.contains("rows"));
    REQUIRE(j.contains("aggregate"));
}

TEST_CASE("output redirection with --out") {
    auto run = cli({"gen", "--family", "regular-tree", "--degree", "2",
                    "--depth", "2", "--out", "cli_test_out.txt"});
    REQUIRE(run.code == 0);
    REQUIRE(run.out.empty());
    std::ifstream f("cli_test_out.txt");
    REQUIRE(f.good());
    Graph g = load_edge_list(f);
    REQUIRE(g.node_count() == 5);
    std::remove("cli_test_out.txt");
}
