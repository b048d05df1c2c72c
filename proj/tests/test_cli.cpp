#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "galelearn/errors.hpp"
#include "galelearn/manifest.hpp"

using namespace galelearn;
using namespace galelearn::cli;

TEST_SUITE_BEGIN("cli");

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::filesystem::path fresh_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("galelearn-test-" + tag);
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("manifest round-trips through JSON") {
    RunManifest m = demo_manifest("demo-disjunctive", 11, "outdir");
    RunManifest back = RunManifest::from_json_text(m.to_json_text());
    CHECK(back.subcommand == "gale");
    CHECK(back.seed == 11);
    CHECK(back.two_to_s == Rat(3, 2));
    CHECK(back.scenario.lengths == std::vector<uint64_t>{4, 6, 8});
    CHECK(back.to_json_text() == m.to_json_text());
}

TEST_CASE("manifest validation rejects bad input") {
    CHECK_THROWS_AS((void)RunManifest::from_json_text("{not json"), ConfigError);
    CHECK_THROWS_AS((void)RunManifest::from_json_text(R"({"subcommand":"gale"})"), ConfigError);
    CHECK_THROWS_AS((void)RunManifest::from_json_text(R"({"seed":1})"), ConfigError);
    CHECK_THROWS_AS(
        (void)RunManifest::from_json_text(
            R"({"subcommand":"gale","seed":1,"epsilon":"zero"})"),
        ConfigError);
    RunManifest bad_eps = RunManifest::from_json_text(
        R"({"subcommand":"gale","seed":1,"epsilon":"0","scenario":{"kind":"disjunctive","lengths":[4]}})");
    bad_eps.output_dir = fresh_dir("bad-eps").string();
    CHECK_THROWS_AS((void)cmd_gale(bad_eps), ConfigError);
    CHECK_THROWS_AS((void)run_manifest(RunManifest::from_json_text(
                        R"({"subcommand":"nope","seed":1})")),
                    ConfigError);
}

TEST_CASE("census pipeline writes deterministic outputs") {
    RunManifest m;
    m.subcommand = "census";
    m.seed = 5;
    m.census_oracle = "alternating";
    m.census_depth = 10;
    m.census_bound_kind = "subexp";
    m.census_epsilon = Rat(9, 10);
    m.alternating_epsilon = 0.9;

    auto dir_a = fresh_dir("census-a");
    auto dir_b = fresh_dir("census-b");
    m.output_dir = dir_a.string();
    CHECK(cmd_census(m) == 0);
    m.output_dir = dir_b.string();
    CHECK(cmd_census(m) == 0);
    CHECK(slurp(dir_a / "census.csv") == slurp(dir_b / "census.csv"));
    CHECK(slurp(dir_a / "summary.json") == slurp(dir_b / "summary.json"));
    // Good exactly at even lengths.
    std::string csv = slurp(dir_a / "census.csv");
    CHECK(csv.find("0,1,1,1\n") != std::string::npos);
    CHECK(csv.find("1,2,3,0\n") != std::string::npos);
}

TEST_CASE("learn pipeline holds the winnow bound and is reproducible") {
    RunManifest m;
    m.subcommand = "learn";
    m.seed = 21;
    m.learn_algorithm = "winnow";
    m.universes = {16, 64};
    m.literals = {0, 1, 2};
    m.runs_per_cell = 2;
    m.budget = 60;
    m.pool = 32;

    auto dir_a = fresh_dir("learn-a");
    auto dir_b = fresh_dir("learn-b");
    m.output_dir = dir_a.string();
    CHECK(cmd_learn(m) == 0);
    m.output_dir = dir_b.string();
    CHECK(cmd_learn(m) == 0);
    CHECK(slurp(dir_a / "runs.csv") == slurp(dir_b / "runs.csv"));
    CHECK(slurp(dir_a / "mistake_log.csv") == slurp(dir_b / "mistake_log.csv"));
}

TEST_CASE("union learn pipeline reports zero violations") {
    RunManifest m;
    m.subcommand = "learn";
    m.seed = 3;
    m.learn_algorithm = "union";
    m.union_runs = 25;
    m.union_budget = 60;
    m.output_dir = fresh_dir("learn-union").string();
    CHECK(cmd_learn(m) == 0);
    std::string summary = slurp(std::filesystem::path(m.output_dir) / "summary.json");
    CHECK(summary.find("\"violations\": 0") != std::string::npos);
}

TEST_CASE("gale pipeline: disjunctive demo manifest, small lengths") {
    RunManifest m = demo_manifest("demo-disjunctive", 7, fresh_dir("gale-disj").string());
    m.scenario.lengths = {4, 6};
    CHECK(cmd_gale(m) == 0);
    auto dir = std::filesystem::path(m.output_dir);
    std::string summary = slurp(dir / "summary.json");
    CHECK(summary.find("\"identity_ok\": true") != std::string::npos);
    CHECK(summary.find("\"all_ok\": true") != std::string::npos);
    // Trace has N + 1 = 32 rows plus the header at n = 4.
    std::string trace = slurp(dir / "trace_n4.csv");
    size_t rows = 0;
    for (char c : trace) rows += c == '\n';
    CHECK(rows == 33);
    // The flat phase ends with capital (3/4)^{N0} at prefix length N0 = 4.
    CHECK(trace.find(",81,256,") != std::string::npos);
}

TEST_CASE("gale pipeline is byte-deterministic") {
    auto dir_a = fresh_dir("gale-det-a");
    auto dir_b = fresh_dir("gale-det-b");
    RunManifest m = demo_manifest("demo-conjunctive", 13, dir_a.string());
    m.scenario.lengths = {4, 5};
    CHECK(cmd_gale(m) == 0);
    RunManifest m2 = m;
    m2.output_dir = dir_b.string();
    CHECK(cmd_gale(m2) == 0);
    for (auto name : {"trace_n4.csv", "trace_n5.csv", "summary.csv"}) {
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
    }
    // Output directory lands in manifest.json, which legitimately differs.
    CHECK(slurp(dir_a / "summary.json") == slurp(dir_b / "summary.json"));
}

TEST_CASE("expand pipeline agrees with brute force everywhere") {
    RunManifest m = demo_manifest("demo-turing", 19, fresh_dir("expand").string());
    m.scenario.lengths = {4, 5};
    CHECK(cmd_expand(m) == 0);
    std::string summary = slurp(std::filesystem::path(m.output_dir) / "summary.json");
    CHECK(summary.find("\"agreement_pct\": \"100\"") != std::string::npos);
    std::string rows = slurp(std::filesystem::path(m.output_dir) / "expansion.csv");
    CHECK(rows.find(",0\n") == std::string::npos);  // no disagreeing row
}

TEST_CASE("turing gale run over the expansion concepts") {
    RunManifest m = demo_manifest("demo-turing", 23, fresh_dir("gale-turing").string());
    m.subcommand = "gale";
    m.scenario.lengths = {4, 5};
    CHECK(cmd_gale(m) == 0);
    std::string summary = slurp(std::filesystem::path(m.output_dir) / "summary.json");
    CHECK(summary.find("\"identity_ok\": true") != std::string::npos);
}

TEST_CASE("strong-mode turing gale run") {
    RunManifest m = demo_manifest("demo-turing", 29, fresh_dir("gale-strong").string());
    m.subcommand = "gale";
    m.mode = "strong";
    m.scenario.lengths = {3, 4};
    CHECK(cmd_gale(m) == 0);
    std::string summary = slurp(std::filesystem::path(m.output_dir) / "summary.json");
    CHECK(summary.find("\"identity_ok\": true") != std::string::npos);
    CHECK(std::filesystem::exists(std::filesystem::path(m.output_dir) / "trace_strong.csv"));
    // Strong mode refuses section-4 scenarios.
    RunManifest bad = demo_manifest("demo-disjunctive", 1, fresh_dir("gale-strong-bad").string());
    bad.mode = "strong";
    CHECK_THROWS_AS((void)cmd_gale(bad), ConfigError);
}

TEST_SUITE_END();
