#include <CLI11.hpp>

#include <iostream>

#include "galelearn/errors.hpp"
#include "galelearn/manifest.hpp"

using galelearn::cli::RunManifest;

namespace {

// Applies --out / --seed overrides after loading a manifest file.
RunManifest load(const std::string& path, const std::string& out_override, bool seed_set,
                 uint64_t seed_override) {
    RunManifest m = RunManifest::from_file(path);
    if (!out_override.empty()) m.output_dir = out_override;
    if (seed_set) m.seed = seed_override;
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online-learner-to-gale experiment harness"};
    app.require_subcommand(1);

    std::string manifest_path;
    std::string out_override;
    uint64_t seed_override = 0;
    bool seed_set = false;
    bool expand_only = false;

    auto add_common = [&](CLI::App* cmd, bool manifest_required) {
        auto* opt = cmd->add_option("--manifest,-m", manifest_path, "manifest JSON file");
        if (manifest_required) opt->required();
        cmd->add_option("--out,-o", out_override, "override the output directory");
        cmd->add_option("--seed,-s", seed_override, "override the seed")
            ->each([&](const std::string&) { seed_set = true; });
    };

    const char* pipeline_names[] = {"learn", "gale", "expand", "census"};
    const char* pipeline_help[] = {
        "mistake-bound teaching runs against the certified ceilings",
        "compile a reduction scenario into s-gales and verify the capital identity",
        "answer-path expansion cross-checked against brute-force oracle runs",
        "exact density census with good-length classification",
    };
    for (int i = 0; i < 4; ++i) {
        add_common(app.add_subcommand(pipeline_names[i], pipeline_help[i]), true);
    }

    const char* demo_names[] = {"demo-disjunctive", "demo-conjunctive", "demo-turing"};
    const char* demo_help[] = {
        "bundled disjunctive pipeline: tally oracle, identity reduction, n in {4,6,8}",
        "bundled conjunctive pipeline with the union learner",
        "bundled adaptive-reduction scenario: expansion dump plus gale run",
    };
    for (int i = 0; i < 3; ++i) {
        auto* cmd = app.add_subcommand(demo_names[i], demo_help[i]);
        add_common(cmd, false);
        if (std::string(demo_names[i]) == "demo-turing") {
            cmd->add_flag("--expand-only", expand_only, "skip the bundled gale run");
        }
    }

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    std::string name = sub->get_name();

    try {
        if (name == "learn" || name == "gale" || name == "expand" || name == "census") {
            RunManifest m = load(manifest_path, out_override, seed_set, seed_override);
            if (m.subcommand != name) {
                throw galelearn::ConfigError("manifest subcommand '" + m.subcommand +
                                             "' does not match '" + name + "'");
            }
            return galelearn::cli::run_manifest(m);
        }
        // Demos: fixed manifests, seeded, overridable on the command line.
        uint64_t seed = seed_set ? seed_override : 7;
        std::string out = out_override.empty() ? "out/" + name : out_override;
        RunManifest m = galelearn::cli::demo_manifest(name, seed, out);
        int rc = galelearn::cli::run_manifest(m);
        if (name == "demo-turing" && !expand_only) {
            RunManifest g = m;
            g.subcommand = "gale";
            g.output_dir = out + "/gale";
            int rc_gale = galelearn::cli::run_manifest(g);
            rc = rc != 0 ? rc : rc_gale;
        }
        return rc;
    } catch (const galelearn::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const galelearn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
