#include "doctest.h"

#include "vertexlab/cli.hpp"
#include "vertexlab/dynamics.hpp"
#include "vertexlab/errors.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using namespace vertexlab;
using namespace vertexlab::cli;

namespace {

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / ("vertexlab_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Runs the vertexlab binary with stdout and stderr captured; returns the exit status.
int run_binary(const std::string& args, std::string* output = nullptr) {
    const char* bin = std::getenv("VERTEXLAB_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "VERTEXLAB_BIN is not set");
    const auto log = scratch_dir() / "stdout.txt";
    const std::string cmd = std::string(bin) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    if (output) *output = read_file(log);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

Settings flags(std::initializer_list<std::pair<const std::string, std::string>> kv) { return Settings(kv); }

}  // namespace

TEST_CASE("config text parsing") {
    const Settings s = parse_config_text("# comment\n q = 1/2 \n\ni_max=3  # trailing\ns=-1/2\n");
    CHECK(s.size() == 3);
    CHECK(s.at("q") == "1/2");
    CHECK(s.at("i-max") == "3");
    CHECK(s.at("s") == "-1/2");
    CHECK_THROWS_AS(parse_config_text("q 1/2\n"), ArgumentError);
    CHECK_THROWS_AS(parse_config_text("q=1/2\nq=1/3\n"), ArgumentError);
    CHECK_THROWS_AS(parse_config_text("=3\n"), ArgumentError);
    CHECK(parse_config_text("").empty());
}

TEST_CASE("parse_config validation and precedence") {
    SUBCASE("empty file plus required flags is valid") {
        const Command c = parse_config("weights", {}, flags({{"q", "1/2"}, {"s", "-1/2"}, {"u", "1/3"}}));
        CHECK(c.settings.at("model") == "higher-spin");
        CHECK(c.settings.at("i-max") == "4");
    }
    SUBCASE("flags override the file") {
        const Settings file = parse_config_text("q=1/3\ns=-1/2\nu=1/3\n");
        const Command c = parse_config("weights", file, flags({{"q", "1/5"}}));
        CHECK(c.settings.at("q") == "1/5");
        CHECK(c.settings.at("u") == "1/3");
    }
    SUBCASE("unknown key") {
        CHECK_THROWS_WITH_AS(parse_config("weights", parse_config_text("colour=red\n")), doctest::Contains("unknown key"),
                             ArgumentError);
    }
    SUBCASE("malformed rational names the key") {
        CHECK_THROWS_WITH_AS(parse_config("weights", {}, flags({{"q", "1/x"}, {"s", "-1/2"}, {"u", "1"}})),
                             doctest::Contains("'q'"), ArgumentError);
    }
    SUBCASE("regime violations quote the inequality") {
        CHECK_THROWS_WITH_AS(parse_config("weights", {},
                                          flags({{"model", "higher-spin-stochastic"}, {"q", "1/2"}, {"s", "1/2"}, {"u", "1"}})),
                             doctest::Contains("-1 < s < 0"), RegimeError);
        CHECK_THROWS_WITH_AS(
            parse_config("moments", {}, flags({{"model", "six-vertex"}, {"q", "1/2"}, {"t", "3/2"}, {"x", "1"}})),
            doctest::Contains("u_i > q^{-1/2}"), RegimeError);
        CHECK_THROWS_WITH_AS(
            parse_config("moments", {}, flags({{"q", "1/2"}, {"s", "-1/2"}, {"u", "-1,2"}, {"x", "1"}})),
            doctest::Contains("u_i >= 0"), RegimeError);
    }
    SUBCASE("u list length must match n") {
        CHECK_THROWS_AS(
            parse_config("moments", {}, flags({{"n", "3"}, {"q", "1/2"}, {"s", "-1/2"}, {"u", "3,4"}, {"x", "1"}})),
            ArgumentError);
        CHECK_NOTHROW(
            parse_config("moments", {}, flags({{"n", "2"}, {"q", "1/2"}, {"s", "-1/2"}, {"u", "3,4"}, {"x", "1"}})));
    }
    SUBCASE("missing required key") {
        CHECK_THROWS_WITH_AS(parse_config("correlations", {}, flags({{"q", "1/2"}})), doctest::Contains("missing"),
                             ArgumentError);
    }
    SUBCASE("unknown command and suite") {
        CHECK_THROWS_AS(parse_config("plot", {}), ArgumentError);
        CHECK_THROWS_AS(parse_config("verify", {}, flags({{"suite", "nonsense"}, {"q", "1/2"}, {"s", "-1/2"}})),
                        ArgumentError);
    }
}

TEST_CASE("weights tables are stochastic") {
    const RunRecord rec = run(parse_config("weights", {}, flags({{"q", "1/3"}, {"s", "-1/2"}, {"u", "2/5"}})));
    CHECK(rec.results.at("stochastic").get<bool>());
    CHECK(rec.results.at("rows").size() == 5 * 2 + 5 * 2 - 1);
    const RunRecord fused = run(parse_config(
        "weights", {}, flags({{"model", "fused"}, {"q", "1/3"}, {"s", "-1/2"}, {"u", "2/5"}, {"J", "2"}, {"i-max", "2"}})));
    CHECK(fused.results.at("stochastic").get<bool>());
    const RunRecord six = run(parse_config("weights", {}, flags({{"model", "six-vertex"}, {"q", "1/2"}, {"t", "3"}})));
    CHECK(six.results.at("rows").size() == 6);
    CHECK(six.results.at("stochastic").get<bool>());
    // b1 = (1 - q t)/(1 - t) at s^2 = 1/q.
    CHECK(six.results.at("rows")[1][4] == "1/4");
    const std::string csv = results_csv(six);
    CHECK(csv.rfind("i1,j1,i2,j2,value\n0,0,0,0,1\n", 0) == 0);
}

TEST_CASE("verify reports") {
    SUBCASE("moment suite passes against brute force") {
        const RunRecord rec = run(parse_config(
            "verify", {}, flags({{"suite", "moments"}, {"q", "1/2"}, {"s", "-1/2"}, {"u", "1/3,1/4"}, {"x", "2,1"}})));
        CHECK(rec.passed());
        const auto& instances = rec.results.at("instances");
        REQUIRE(instances.size() == 2);
        CHECK(instances[0].at("lhs") == "121/672");
        CHECK(rec.results.at("suite") == "moments");
        CHECK(rec.results.at("params").at("u") == "1/3,1/4");
    }
    SUBCASE("yang-baxter blocks") {
        const RunRecord rec = run(parse_config(
            "verify", {}, flags({{"suite", "yang-baxter"}, {"q", "1/3"}, {"s", "-2/5"}, {"u", "1/3,2/7"}, {"m-max", "2"}})));
        CHECK(rec.passed());
        CHECK(rec.results.at("instances").size() == 9);
        CHECK(rec.results.at("instances")[0].at("lhs").size() == 16);
    }
    SUBCASE("fusion and stochasticity") {
        CHECK(run(parse_config("verify", {},
                               flags({{"suite", "fusion"}, {"q", "1/3"}, {"s", "-1/2"}, {"u", "2/5"}, {"J", "2"}, {"i-max", "2"}})))
                  .passed());
        CHECK(run(parse_config("verify", {}, flags({{"suite", "stochasticity"}, {"q", "1/3"}, {"s", "-1/2"}, {"u", "2/5,3"}})))
                  .passed());
    }
    SUBCASE("a cutoff too small for the tolerance fails the check") {
        const RunRecord rec = run(parse_config("verify", {},
                                               flags({{"suite", "cauchy"}, {"q", "1/3"}, {"s", "-1/2"}, {"u", "1/3,1/4"},
                                                      {"v", "1/5,1/6"}, {"cutoff", "3"}})));
        CHECK_FALSE(rec.passed());
    }
    SUBCASE("identity suites accept hyphenated names") {
        CHECK(run(parse_config("verify", {},
                               flags({{"suite", "moment-recombination"}, {"q", "1/3"}, {"s", "-1/2"}, {"z", "2/3,1/5,7,3/4,1/2"}})))
                  .passed());
    }
}

TEST_CASE("moments and correlations records") {
    const RunRecord rec = run(parse_config(
        "moments", {}, flags({{"n", "3"}, {"u", "3,4,5"}, {"x", "3,2"}, {"q", "1/2"}, {"s", "-1/2"}, {"method", "exact"}})));
    CHECK(rec.results.at("exact") == "10859/89600");
    CHECK_FALSE(rec.results.contains("mc"));
    CHECK(rec.passed());

    const RunRecord both = run(parse_config("moments", {},
                                            flags({{"u", "1/3,1/4"}, {"x", "2,1"}, {"q", "1/2"}, {"s", "-1/2"},
                                                   {"method", "both"}, {"replicas", "4000"}, {"seed", "11"}})));
    CHECK(both.results.at("exact") == "121/672");
    CHECK(both.results.at("mc").at("replicas") == 4000);
    CHECK(both.results.at("sigma_distance").get<double>() < 4.5);
    CHECK(both.seed == 11);

    const RunRecord boson = run(parse_config(
        "moments", {}, flags({{"model", "q-boson"}, {"q", "1/2"}, {"time", "1/2"}, {"x", "2"}, {"precision", "96"}})));
    CHECK(boson.results.at("approx").get<bool>());
    CHECK(boson.results.at("precision_bits") == 96);

    const RunRecord corr = run(parse_config(
        "correlations", {}, flags({{"q", "1/2"}, {"s", "-1/2"}, {"u", "1/3,1/4"}, {"theta", "1"}, {"method", "both"}})));
    CHECK(corr.passed());
    CHECK(corr.results.at("exact") == "1241/7056");
}

TEST_CASE("simulate records replay bit-identically") {
    const Command c = parse_config("simulate", {},
                                   flags({{"model", "Xplus"}, {"u", "1/3,1/4,1/5"}, {"steps", "3"}, {"observe", "2,1"},
                                          {"replicas", "3000"}, {"seed", "5"}, {"keep", "4"}}));
    const RunRecord rec = run(c);
    CHECK(rec.results.at("configs").size() == 4);
    RunRecord again;
    CHECK(replay_matches(rec, &again));
    CHECK(again.results.dump() == rec.results.dump());
    RunOptions threaded;
    threaded.workers = 3;
    CHECK(replay_matches(rec, nullptr, threaded));

    SUBCASE("round trip through JSON") {
        const auto path = scratch_dir() / "run.json";
        save_record(rec, path.string());
        const RunRecord loaded = load_record(path.string());
        CHECK(loaded.command == rec.command);
        CHECK(loaded.params == rec.params);
        CHECK(loaded.seed == 5);
        CHECK(loaded.results == rec.results);
        CHECK(replay_matches(loaded));
    }
    SUBCASE("a tampered payload does not replay") {
        RunRecord bad = rec;
        bad.results["mean"] = rec.results.at("mean").get<double>() + 1e-12;
        CHECK_FALSE(replay_matches(bad));
    }
    SUBCASE("malformed records") {
        CHECK_THROWS_AS(RunRecord::from_json(Json::parse(R"({"schema_version": 99})")), ArgumentError);
        CHECK_THROWS_AS(RunRecord::from_json(Json::parse(R"({"schema_version": 1})")), ArgumentError);
    }
}

TEST_CASE("simulate with zero replicas gives an empty record") {
    const RunRecord rec =
        run(parse_config("simulate", {}, flags({{"model", "Xplus"}, {"u", "1/3"}, {"steps", "2"}, {"replicas", "0"}})));
    CHECK(rec.results.at("replicas") == 0);
    CHECK(rec.results.at("mean").is_null());
    CHECK(rec.results.at("configs").empty());
    CHECK(replay_matches(rec));
}

TEST_CASE("height grid emission") {
    const auto path = scratch_dir() / "grid.csv";
    const RunRecord rec = run(parse_config("simulate", {},
                                           flags({{"model", "sixVertexQuadrant"}, {"steps", "300"}, {"window", "300"},
                                                  {"seed", "2"}, {"emit-grid", path.string()}})));
    CHECK(rec.results.at("grid").at("cells") == 90000);
    std::istringstream in(read_file(path));
    std::string line;
    long cells = 0;
    int y = 0;
    while (std::getline(in, line)) {
        ++y;
        std::istringstream row(line);
        std::string cell;
        int x = 0;
        long previous = -1;
        while (std::getline(row, cell, ',')) {
            ++x;
            ++cells;
            const long h = std::stol(cell);
            if (x == 1) CHECK(h == y);  // every row injects one path at column 1
            if (x > 1) CHECK(h <= previous);
            previous = h;
        }
        CHECK(x == 300);
    }
    CHECK(y == 300);
    CHECK(cells == 90000);
    std::filesystem::remove(path);
    CHECK(replay_matches(rec));
    CHECK_FALSE(std::filesystem::exists(path));  // replay leaves side outputs alone
    CHECK_THROWS_AS(parse_config("simulate", {}, flags({{"model", "Xplus"}, {"u", "1"}, {"emit-grid", "g.csv"}})),
                    ArgumentError);
}

TEST_CASE("height_grid_csv layout") {
    CHECK(height_grid_csv({{3, 2, 0}, {4, 4, 1}}) == "3,2,0\n4,4,1\n");
    CHECK(height_grid_csv({}).empty());
}

TEST_CASE("binary exit codes") {
    std::string out;
    CHECK(run_binary("weights --q 1/2 --s -1/2 --u 1/3 --dump", &out) == 0);
    CHECK(out.rfind("i1,j1,i2,j2,value", 0) == 0);
    CHECK(run_binary("weights --q 1/2 --s 1/2 --u 1/3", &out) == 2);
    CHECK(out.find("-1 < s < 0") != std::string::npos);
    CHECK(run_binary("weights --q 1/2 --s -1/2 --u 1/3 --no-such-flag 1") == 2);
    CHECK(run_binary("") == 2);
    CHECK(run_binary("--help") == 0);
    CHECK(run_binary("verify --suite cauchy --q 1/3 --s -1/2 --u 1/3,1/4 --v 1/5,1/6 --cutoff 3") == 1);
    CHECK(run_binary("verify --suite moments --q 1/2 --s -1/2 --u 1/3,1/4 --x 2,1 --csv", &out) == 0);
    CHECK(out.find("121/672") != std::string::npos);

    const auto dir = scratch_dir();
    const auto config = dir / "moments.cfg";
    std::ofstream(config) << "# query\nq = 1/2\ns = -1/2\nu = 1/3,1/4\nx = 3\nmethod = both\nreplicas = 2000\n";
    const auto record = dir / "moments.json";
    CHECK(run_binary("moments --config " + config.string() + " --seed 9 --out " + record.string()) == 0);
    const RunRecord rec = load_record(record.string());
    CHECK(rec.params.at("seed") == "9");
    CHECK(rec.params.at("replicas") == "2000");
    CHECK(run_binary("replay " + record.string(), &out) == 0);
    CHECK(out.find("identical") != std::string::npos);

    Json tampered = rec.to_json();
    tampered["results"]["mc"]["mean"] = 0.5;
    std::ofstream(dir / "tampered.json") << tampered.dump();
    CHECK(run_binary("replay " + (dir / "tampered.json").string()) == 1);
    CHECK(run_binary("replay " + (dir / "missing.json").string()) == 2);
    std::filesystem::remove_all(dir);
}
