#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "galelearn/oracle.hpp"
#include "galelearn/rat.hpp"
#include "galelearn/reductions.hpp"

namespace galelearn::cli {

// One manifest = one run = one output directory. Every rational is carried
// as "p/q" text, the seed is mandatory, and all outputs are byte-identical
// across repeated runs (timings go to stdout only).
struct RunManifest {
    uint64_t schema_version = 1;
    std::string subcommand;  // learn | gale | expand | census
    uint64_t seed = 0;
    std::string output_dir;
    uint64_t precision_r = 8;

    // Gale pipeline.
    Rat two_to_s = Rat(3, 2);
    Rat epsilon = Rat(1, 4);
    std::string learner = "auto";  // auto | winnow | union
    std::string mode = "weak";     // weak | strong
    reductions::ScenarioKind scenario_kind = reductions::ScenarioKind::Disjunctive;
    reductions::ScenarioParams scenario;

    // Learn pipeline.
    std::string learn_algorithm = "winnow";  // winnow | union
    std::vector<uint64_t> universes{64, 256, 1024};
    std::vector<uint64_t> literals{0, 1, 2, 4, 8};
    uint64_t runs_per_cell = 7;
    uint64_t budget = 160;
    uint64_t pool = 96;
    uint64_t union_runs = 200;
    uint64_t union_universe = 48;
    uint64_t union_set_size = 5;
    uint64_t union_budget = 120;

    // Census pipeline.
    std::string census_oracle = "tally";
    uint64_t census_depth = 10;
    std::string census_bound_kind = "subexp";  // subexp | poly
    Rat census_epsilon = Rat(1, 2);
    std::vector<uint64_t> census_poly{1, 1};
    double alternating_epsilon = 0.9;

    static RunManifest from_file(const std::string& path);
    static RunManifest from_json_text(const std::string& text);
    std::string to_json_text() const;  // resolved manifest, stable key order
};

// Per-length result row of the gale pipeline.
struct SummaryRow {
    std::string pipeline;
    uint64_t n = 0;
    uint64_t N = 0;
    uint64_t N0 = 0;
    uint64_t universe = 0;
    uint64_t concept_size = 0;     // k or |X|
    double budget_log2 = 0;        // literal budget of the class
    uint64_t mistakes = 0;         // m_n
    uint64_t mistake_bound = 0;    // certified learner bound
    double final_log2 = 0;
    std::string final_exact;       // "num/den"
    bool good = false;
    bool identity_ok = false;
    bool certificate_ok = false;
    double runtime_ms = 0;  // stdout only, never serialized
};

// Exit codes: 0 all asserted bounds held, 1 a bound or identity failed,
// 2 usage/config error (thrown as ConfigError by the callee).
int cmd_learn(const RunManifest& manifest);
int cmd_gale(const RunManifest& manifest);
int cmd_expand(const RunManifest& manifest);
int cmd_census(const RunManifest& manifest);

// Bundled demo manifests (synthesize a scenario, then run the pipeline).
RunManifest demo_manifest(const std::string& which, uint64_t seed, const std::string& out_dir);

// Dispatch on manifest.subcommand.
int run_manifest(const RunManifest& manifest);

}  // namespace galelearn::cli
