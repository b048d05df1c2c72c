#include "galelearn/manifest.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "galelearn/compiler.hpp"
#include "galelearn/errors.hpp"
#include "galelearn/gale.hpp"
#include "galelearn/learner.hpp"

namespace galelearn::cli {

using json = nlohmann::json;
using seqcore::BitString;
using seqcore::LanguageOracle;

namespace {

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write " + name + " under " + dir);
    }
    out << content;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

Rat json_rat(const json& j, const char* field, const Rat& fallback) {
    if (!j.contains(field)) return fallback;
    return rat_parse(j.at(field).get<std::string>());
}

std::vector<uint64_t> json_u64s(const json& j, const char* field,
                                const std::vector<uint64_t>& fallback) {
    if (!j.contains(field)) return fallback;
    return j.at(field).get<std::vector<uint64_t>>();
}

reductions::ScenarioKind scenario_kind_from(const std::string& name) {
    if (name == "disjunctive") return reductions::ScenarioKind::Disjunctive;
    if (name == "conjunctive") return reductions::ScenarioKind::Conjunctive;
    if (name == "turing") return reductions::ScenarioKind::Turing;
    throw ConfigError("unknown scenario kind: " + name);
}

std::string scenario_kind_name(reductions::ScenarioKind kind) {
    switch (kind) {
        case reductions::ScenarioKind::Disjunctive: return "disjunctive";
        case reductions::ScenarioKind::Conjunctive: return "conjunctive";
        case reductions::ScenarioKind::Turing: return "turing";
    }
    return "?";
}

}  // namespace

RunManifest RunManifest::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
    }
    try {
        RunManifest m;
        m.schema_version = j.value("schema_version", uint64_t{1});
        if (m.schema_version != 1) {
            throw ConfigError("unsupported schema_version");
        }
        if (!j.contains("subcommand")) {
            throw ConfigError("manifest field 'subcommand' is required");
        }
        m.subcommand = j.at("subcommand").get<std::string>();
        if (!j.contains("seed")) {
            throw ConfigError("manifest field 'seed' is required (no ambient randomness)");
        }
        m.seed = j.at("seed").get<uint64_t>();
        m.output_dir = j.value("output_dir", std::string("out"));
        m.precision_r = j.value("precision_r", uint64_t{8});
        m.two_to_s = json_rat(j, "two_to_s", m.two_to_s);
        m.epsilon = json_rat(j, "epsilon", m.epsilon);
        m.learner = j.value("learner", std::string("auto"));
        m.mode = j.value("mode", std::string("weak"));
        if (j.contains("scenario")) {
            const json& s = j.at("scenario");
            m.scenario_kind = scenario_kind_from(s.value("kind", std::string("disjunctive")));
            m.scenario.lengths = json_u64s(s, "lengths", {4, 6, 8});
            m.scenario.density_epsilon = json_rat(s, "density_epsilon", Rat(4, 5));
            m.scenario.oracle_kind = s.value("oracle", std::string("tally"));
            m.scenario.f_kind = s.value("f", std::string("identity"));
            m.scenario.machine_kind = s.value("machine", std::string("random-tree"));
            m.scenario.query_count = s.value("query_count", uint64_t{2});
            m.scenario.g_width = s.value("g_width", uint64_t{1});
        } else {
            m.scenario.lengths = {4, 6, 8};
        }
        if (j.contains("learn")) {
            const json& l = j.at("learn");
            m.learn_algorithm = l.value("algorithm", std::string("winnow"));
            m.universes = json_u64s(l, "universes", m.universes);
            m.literals = json_u64s(l, "literals", m.literals);
            m.runs_per_cell = l.value("runs_per_cell", m.runs_per_cell);
            m.budget = l.value("budget", m.budget);
            m.pool = l.value("pool", m.pool);
            m.union_runs = l.value("union_runs", m.union_runs);
            m.union_universe = l.value("union_universe", m.union_universe);
            m.union_set_size = l.value("union_set_size", m.union_set_size);
            m.union_budget = l.value("union_budget", m.union_budget);
        }
        if (j.contains("census")) {
            const json& c = j.at("census");
            m.census_oracle = c.value("oracle", m.census_oracle);
            m.census_depth = c.value("depth", m.census_depth);
            if (c.contains("bound")) {
                const json& b = c.at("bound");
                m.census_bound_kind = b.value("kind", m.census_bound_kind);
                m.census_epsilon = json_rat(b, "epsilon", m.census_epsilon);
                m.census_poly = json_u64s(b, "coeffs", m.census_poly);
            }
            m.alternating_epsilon = c.value("alternating_epsilon", m.alternating_epsilon);
        }
        return m;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad manifest field: ") + e.what());
    }
}

RunManifest RunManifest::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open manifest: " + path);
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_text(text);
}

std::string RunManifest::to_json_text() const {
    json j;
    j["schema_version"] = schema_version;
    j["subcommand"] = subcommand;
    j["seed"] = seed;
    j["output_dir"] = output_dir;
    j["precision_r"] = precision_r;
    j["two_to_s"] = rat_str(two_to_s);
    j["epsilon"] = rat_str(epsilon);
    j["learner"] = learner;
    j["mode"] = mode;
    j["scenario"] = {{"kind", scenario_kind_name(scenario_kind)},
                     {"lengths", scenario.lengths},
                     {"density_epsilon", rat_str(scenario.density_epsilon)},
                     {"oracle", scenario.oracle_kind},
                     {"f", scenario.f_kind},
                     {"machine", scenario.machine_kind},
                     {"query_count", scenario.query_count},
                     {"g_width", scenario.g_width}};
    j["learn"] = {{"algorithm", learn_algorithm},
                  {"universes", universes},
                  {"literals", literals},
                  {"runs_per_cell", runs_per_cell},
                  {"budget", budget},
                  {"pool", pool},
                  {"union_runs", union_runs},
                  {"union_universe", union_universe},
                  {"union_set_size", union_set_size},
                  {"union_budget", union_budget}};
    j["census"] = {{"oracle", census_oracle},
                   {"depth", census_depth},
                   {"bound",
                    {{"kind", census_bound_kind},
                     {"epsilon", rat_str(census_epsilon)},
                     {"coeffs", census_poly}}},
                   {"alternating_epsilon", alternating_epsilon}};
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// learn

int cmd_learn(const RunManifest& m) {
    auto start = std::chrono::steady_clock::now();
    std::string rows;
    std::string last_log_csv;
    uint64_t violations = 0;
    uint64_t runs = 0;
    if (m.learn_algorithm == "winnow") {
        rows = "algorithm,universe,literals,run,examples,mistakes,bound,ok\n";
        for (uint64_t universe : m.universes) {
            for (uint64_t k : m.literals) {
                if (k > universe) continue;
                for (uint64_t run = 0; run < m.runs_per_cell; ++run) {
                    Rng rng(mix_key(m.seed, "winnow:" + std::to_string(universe) + ":" +
                                                std::to_string(k) + ":" + std::to_string(run)));
                    learn::MonotoneDisjunction target{universe, rng.sample_distinct(k, universe)};
                    auto prototype = learn::WinnowLearner::standard(universe);
                    auto sequence =
                        learn::adversarial_sequence(target, prototype, m.budget, rng, m.pool);
                    auto fresh = learn::WinnowLearner::standard(universe);
                    auto log = learn::teach(
                        fresh, [&](const learn::SparseExample& x) { return target.evaluate(x); },
                        sequence);
                    uint64_t bound = learn::winnow_bound(k, universe);
                    bool ok = fresh.mistakes() <= bound;
                    if (!ok) ++violations;
                    ++runs;
                    rows += "winnow," + std::to_string(universe) + "," + std::to_string(k) + "," +
                            std::to_string(run) + "," + std::to_string(sequence.size()) + "," +
                            std::to_string(fresh.mistakes()) + "," + std::to_string(bound) + "," +
                            (ok ? "1" : "0") + "\n";
                    last_log_csv = log.to_csv();
                }
            }
        }
    } else if (m.learn_algorithm == "union") {
        rows = "algorithm,universe,set_size,run,examples,mistakes,negative_mistakes,bound,ok\n";
        for (uint64_t run = 0; run < m.union_runs; ++run) {
            Rng rng(mix_key(m.seed, "union:" + std::to_string(run)));
            auto members = rng.sample_distinct(m.union_set_size, m.union_universe);
            std::set<uint64_t> X(members.begin(), members.end());
            learn::UnionLearner learner(m.union_universe);
            learn::MistakeLog log;
            uint64_t negative_mistakes = 0;
            for (uint64_t step = 0; step < m.union_budget; ++step) {
                auto q = learn::SparseExample::from_positions(
                    m.union_universe, rng.sample_distinct(rng.below(7), m.union_universe));
                bool truth = true;
                for (uint64_t p : q.ones) truth = truth && X.count(p) != 0;
                auto out = learner.observe(q, truth);
                if (out.mistake && !truth) ++negative_mistakes;
                log.records.push_back(learn::MistakeRecord{
                    step, q.popcount(), out.predicted_positive, truth, learner.mistakes()});
            }
            bool ok = learner.mistakes() <= X.size() && negative_mistakes == 0;
            if (!ok) ++violations;
            ++runs;
            rows += "union," + std::to_string(m.union_universe) + "," + std::to_string(X.size()) +
                    "," + std::to_string(run) + "," + std::to_string(m.union_budget) + "," +
                    std::to_string(learner.mistakes()) + "," + std::to_string(negative_mistakes) +
                    "," + std::to_string(X.size()) + "," + (ok ? "1" : "0") + "\n";
            last_log_csv = log.to_csv();
        }
    } else {
        throw ConfigError("unknown learn algorithm: " + m.learn_algorithm);
    }

    write_file(m.output_dir, "runs.csv", rows);
    write_file(m.output_dir, "mistake_log.csv", last_log_csv);
    json summary;
    summary["pipeline"] = "learn-" + m.learn_algorithm;
    summary["runs"] = runs;
    summary["violations"] = violations;
    summary["all_ok"] = violations == 0;
    write_file(m.output_dir, "summary.json", summary.dump(2) + "\n");
    write_file(m.output_dir, "manifest.json", m.to_json_text());
    std::cout << "learn: " << runs << " runs, " << violations << " violations ("
              << fmt12(elapsed_ms(start)) << " ms)\n";
    return violations == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// gale

namespace {

compiler::LearnerFactory make_factory(const std::string& which,
                                      const compiler::ConceptReduction& red) {
    auto universe = red.universe_size;
    if (which == "winnow") {
        return [universe](uint64_t n) -> std::unique_ptr<learn::OnlineLearner> {
            return std::make_unique<learn::WinnowLearner>(
                learn::WinnowLearner::standard(universe(n)));
        };
    }
    if (which == "union") {
        return [universe](uint64_t n) -> std::unique_ptr<learn::OnlineLearner> {
            return std::make_unique<learn::UnionLearner>(universe(n));
        };
    }
    throw ConfigError("unknown learner: " + which);
}

std::string resolve_learner(const RunManifest& m) {
    if (m.learner != "auto") return m.learner;
    return m.scenario_kind == reductions::ScenarioKind::Conjunctive ? "union" : "winnow";
}

uint64_t learner_mistake_bound(const std::string& learner, uint64_t concept_size,
                               uint64_t universe) {
    if (learner == "union") return concept_size;
    return learn::winnow_bound(concept_size, std::max<uint64_t>(universe, 2));
}

compiler::ConceptReduction build_reduction(const reductions::SyntheticScenario& scenario,
                                           const RunManifest& m,
                                           compiler::ConceptReduction::Mode mode) {
    switch (scenario.kind) {
        case reductions::ScenarioKind::Disjunctive:
            return reductions::disjunctive_to_concept(*scenario.f, scenario.S, m.scenario.lengths,
                                                      m.scenario.density_epsilon);
        case reductions::ScenarioKind::Conjunctive:
            return reductions::conjunctive_to_concept(*scenario.f, scenario.S, m.scenario.lengths,
                                                      m.scenario.density_epsilon);
        case reductions::ScenarioKind::Turing:
            return reductions::turing_to_concept(scenario, mode, m.scenario.lengths,
                                                 m.scenario.density_epsilon);
    }
    throw ConfigError("unreachable scenario kind");
}

std::string summary_csv_header() {
    return "pipeline,n,N,N0,universe,concept_size,budget_log2,mistakes,mistake_bound,"
           "final_log2,final_num,final_den,good,identity_ok,certificate_ok\n";
}

std::string summary_csv_row(const SummaryRow& row, const Rat& final_exact) {
    return row.pipeline + "," + std::to_string(row.n) + "," + std::to_string(row.N) + "," +
           std::to_string(row.N0) + "," + std::to_string(row.universe) + "," +
           std::to_string(row.concept_size) + "," + fmt12(row.budget_log2) + "," +
           std::to_string(row.mistakes) + "," + std::to_string(row.mistake_bound) + "," +
           fmt12(row.final_log2) + "," + final_exact.get_num().get_str() + "," +
           final_exact.get_den().get_str() + "," + (row.good ? "1" : "0") + "," +
           (row.identity_ok ? "1" : "0") + "," + (row.certificate_ok ? "1" : "0") + "\n";
}

}  // namespace

int cmd_gale(const RunManifest& m) {
    auto scenario = reductions::synthesize_scenario(m.seed, m.scenario_kind, m.scenario);
    std::string learner = resolve_learner(m);
    gale::GaleExponent exponent{m.two_to_s};
    if (m.mode != "weak" && m.mode != "strong") {
        throw ConfigError("mode must be weak or strong");
    }
    bool strong = m.mode == "strong";
    if (strong && scenario.kind != reductions::ScenarioKind::Turing) {
        throw ConfigError("strong mode is wired to the turing pipeline");
    }

    std::string pipeline = scenario_kind_name(scenario.kind) + std::string("-") + m.mode;
    std::string summary_csv = summary_csv_header();
    json summary;
    summary["pipeline"] = pipeline;
    summary["learner"] = learner;
    summary["two_to_s"] = rat_str(m.two_to_s);
    summary["epsilon"] = rat_str(m.epsilon);
    bool all_ok = true;
    json per_n = json::array();

    if (strong) {
        auto red = build_reduction(scenario, m, compiler::ConceptReduction::Mode::Strong);
        auto factory = make_factory(learner, red);
        auto strong_gale =
            compiler::compile_strong(red, factory, exponent, m.epsilon, m.scenario.lengths);
        uint64_t max_n = *std::max_element(m.scenario.lengths.begin(), m.scenario.lengths.end());
        auto start = std::chrono::steady_clock::now();
        BitString bits = seqcore::characteristic_prefix(scenario.reduced_language,
                                                        (uint64_t{1} << (max_n + 1)) - 1);
        auto run = strong_gale.traced_run(bits);
        bool identity =
            run.trace.final_capital() == compiler::strong_closed_form(run, exponent, m.epsilon);
        all_ok = identity;
        write_file(m.output_dir, "trace_strong.csv", run.trace.to_csv());
        for (const auto& block : run.blocks) {
            auto target = red.target(block.n);
            uint64_t universe = red.universe_size(block.n);
            uint64_t bound = target ? learner_mistake_bound(learner, target->size, universe) : 0;
            bool block_ok = block.mistakes <= bound;
            if (red.good_lengths.count(block.n) && !block_ok) all_ok = false;
            json b;
            b["n"] = block.n;
            b["bets"] = block.bets;
            b["mistakes"] = block.mistakes;
            b["mistake_bound"] = bound;
            b["good"] = red.good_lengths.count(block.n) != 0;
            per_n.push_back(b);
        }
        summary["identity_ok"] = identity;
        summary["final_log2"] = fmt12(rat_log2(run.trace.final_capital()));
        std::cout << "gale strong: identity " << (identity ? "ok" : "FAILED") << " ("
                  << fmt12(elapsed_ms(start)) << " ms)\n";
    } else {
        auto red = build_reduction(scenario, m, compiler::ConceptReduction::Mode::Weak);
        auto factory = make_factory(learner, red);
        for (uint64_t n : m.scenario.lengths) {
            auto start = std::chrono::steady_clock::now();
            auto params = compiler::CompilerParams::make(exponent, m.epsilon, n);
            auto gale = compiler::compile_gale(red, factory, params);
            BitString w_n = seqcore::characteristic_prefix(scenario.reduced_language, params.N);
            auto run = gale.traced_run(w_n);
            const Rat& final_capital = run.trace.capitals[params.N];

            SummaryRow row;
            row.pipeline = pipeline;
            row.n = n;
            row.N = params.N;
            row.N0 = params.N0;
            row.universe = red.universe_size(n);
            auto target = red.target(n);
            row.concept_size = target ? target->size : 0;
            row.budget_log2 = red.concept_class(n).literal_budget_log2;
            row.mistakes = run.mistake_count;
            row.mistake_bound = learner_mistake_bound(learner, row.concept_size, row.universe);
            row.final_log2 = rat_log2(final_capital);
            row.good = red.good_lengths.count(n) != 0;
            row.identity_ok =
                compiler::capital_identity_check(run.trace, run.mistake_count, params);
            auto cert = compiler::growth_certificate(params, run.mistake_count, row.final_log2);
            row.certificate_ok = cert.lower_bound_holds;
            row.runtime_ms = elapsed_ms(start);

            bool row_ok =
                row.identity_ok && row.certificate_ok && row.mistakes <= row.mistake_bound;
            if (row.good && !row_ok) all_ok = false;

            write_file(m.output_dir, "trace_n" + std::to_string(n) + ".csv", run.trace.to_csv());
            write_file(m.output_dir, "mistakes_n" + std::to_string(n) + ".csv", run.log.to_csv());
            summary_csv += summary_csv_row(row, final_capital);
            json jn;
            jn["n"] = n;
            jn["universe"] = row.universe;
            jn["concept_size"] = row.concept_size;
            jn["mistakes"] = row.mistakes;
            jn["mistake_bound"] = row.mistake_bound;
            jn["final_log2"] = fmt12(row.final_log2);
            jn["good"] = row.good;
            jn["identity_ok"] = row.identity_ok;
            jn["certificate_ok"] = row.certificate_ok;
            jn["delta"] = fmt12(cert.delta);
            jn["certificate_lower_bound"] = fmt12(cert.exponent_lower_bound);
            per_n.push_back(jn);
            std::cout << "gale n=" << n << ": m=" << row.mistakes << "/" << row.mistake_bound
                      << " identity=" << (row.identity_ok ? "ok" : "FAILED") << " ("
                      << fmt12(row.runtime_ms) << " ms)\n";
        }
        write_file(m.output_dir, "summary.csv", summary_csv);
    }
    summary["per_n"] = per_n;
    summary["all_ok"] = all_ok;
    write_file(m.output_dir, "summary.json", summary.dump(2) + "\n");
    write_file(m.output_dir, "manifest.json", m.to_json_text());
    return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// expand

int cmd_expand(const RunManifest& m) {
    auto start = std::chrono::steady_clock::now();
    if (m.scenario_kind != reductions::ScenarioKind::Turing) {
        throw ConfigError("expand needs a turing scenario");
    }
    auto scenario = reductions::synthesize_scenario(m.seed, m.scenario_kind, m.scenario);
    uint64_t n = *std::max_element(m.scenario.lengths.begin(), m.scenario.lengths.end());
    uint64_t q = m.scenario.query_count;
    auto a_n = reductions::build_A_n(*scenario.U, scenario.r_length_bound(n), q);
    uint64_t r_count = scenario.g->poly_bound(1 + scenario.machine->query_length_bound(n));

    std::string rows = "x,length,zx_size,hx_size,expansion_member,brute_member,agree\n";
    uint64_t agreements = 0;
    uint64_t total = (uint64_t{1} << (n + 1)) - 1;
    for (uint64_t i = 0; i < total; ++i) {
        BitString x = seqcore::index_to_string(i);
        auto paths = reductions::answer_paths(*scenario.machine, x);
        auto z_x = reductions::accepting_set(paths);
        auto h_x = reductions::build_H_x(paths, z_x, *scenario.g, r_count, q);
        bool expansion = reductions::membership_via_expansion(h_x, a_n);
        bool brute = reductions::brute_force_oracle_run(*scenario.machine, scenario.S, x);
        bool agree = expansion == brute;
        if (agree) ++agreements;
        rows += x.str() + "," + std::to_string(x.length()) + "," + std::to_string(z_x.size()) +
                "," + std::to_string(h_x.size()) + "," + (expansion ? "1" : "0") + "," +
                (brute ? "1" : "0") + "," + (agree ? "1" : "0") + "\n";
    }
    write_file(m.output_dir, "expansion.csv", rows);

    json summary;
    summary["pipeline"] = "expand";
    summary["machine"] = scenario.machine->name;
    summary["n"] = n;
    summary["query_count"] = q;
    summary["an_size"] = a_n.size();
    summary["inputs"] = total;
    summary["agreements"] = agreements;
    summary["agreement_pct"] = fmt12(100.0 * double(agreements) / double(total));
    bool all_ok = agreements == total;
    summary["all_ok"] = all_ok;
    write_file(m.output_dir, "summary.json", summary.dump(2) + "\n");
    write_file(m.output_dir, "manifest.json", m.to_json_text());
    std::cout << "expand: " << agreements << "/" << total << " agree (" << fmt12(elapsed_ms(start))
              << " ms)\n";
    return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// census

namespace {

LanguageOracle census_oracle_from(const RunManifest& m) {
    const std::string& kind = m.census_oracle;
    if (kind == "tally") return LanguageOracle::tally();
    if (kind == "empty") return LanguageOracle::empty_set();
    if (kind == "full") return LanguageOracle::full_set();
    if (kind == "even") return LanguageOracle::even_length();
    if (kind == "random-rate") return LanguageOracle::seeded_random(m.seed, 1, 2);
    if (kind == "random-sparse") {
        return seqcore::random_with_counts("random-sparse", m.seed, m.census_depth,
                                           [](uint64_t len) { return len + 1; })
            .oracle;
    }
    if (kind == "alternating") {
        return seqcore::alternating_good_even(m.seed, m.census_depth, m.alternating_epsilon)
            .oracle;
    }
    throw ConfigError("unknown census oracle kind: " + kind);
}

}  // namespace

int cmd_census(const RunManifest& m) {
    auto start = std::chrono::steady_clock::now();
    if (m.census_bound_kind != "poly" && m.census_bound_kind != "subexp") {
        throw ConfigError("census bound kind must be poly or subexp");
    }
    LanguageOracle oracle = census_oracle_from(m);
    auto records = seqcore::density_census(oracle, m.census_depth);
    seqcore::DensityBound bound = m.census_bound_kind == "poly"
                                      ? seqcore::DensityBound::sparse_poly(m.census_poly)
                                      : seqcore::DensityBound::subexp(m.census_epsilon);
    auto good = seqcore::check_density_bound(records, bound);

    std::string rows = "length,count_at_length,cumulative_count,good\n";
    for (const auto& rec : records) {
        rows += std::to_string(rec.length) + "," + std::to_string(rec.count_at_length) + "," +
                std::to_string(rec.cumulative_count) + "," +
                (good.count(rec.length) ? "1" : "0") + "\n";
    }
    write_file(m.output_dir, "census.csv", rows);

    json summary;
    summary["pipeline"] = "census";
    summary["oracle"] = oracle.name();
    summary["depth"] = m.census_depth;
    summary["bound_kind"] = m.census_bound_kind;
    summary["good_lengths"] = std::vector<uint64_t>(good.begin(), good.end());
    summary["all_ok"] = true;
    write_file(m.output_dir, "summary.json", summary.dump(2) + "\n");
    write_file(m.output_dir, "manifest.json", m.to_json_text());
    std::cout << "census: " << records.size() << " lengths, " << good.size() << " good ("
              << fmt12(elapsed_ms(start)) << " ms)\n";
    return 0;
}

// ---------------------------------------------------------------------------

RunManifest demo_manifest(const std::string& which, uint64_t seed, const std::string& out_dir) {
    RunManifest m;
    m.seed = seed;
    m.output_dir = out_dir;
    if (which == "demo-disjunctive") {
        m.subcommand = "gale";
        m.scenario_kind = reductions::ScenarioKind::Disjunctive;
        m.scenario.lengths = {4, 6, 8};
        m.scenario.oracle_kind = "tally";
        m.scenario.f_kind = "identity";
    } else if (which == "demo-conjunctive") {
        m.subcommand = "gale";
        m.scenario_kind = reductions::ScenarioKind::Conjunctive;
        m.scenario.lengths = {4, 6, 8};
        m.scenario.oracle_kind = "tally";
        m.scenario.f_kind = "identity";
    } else if (which == "demo-turing") {
        m.subcommand = "expand";
        m.scenario_kind = reductions::ScenarioKind::Turing;
        m.scenario.lengths = {4, 5, 6};
        m.scenario.query_count = 2;
        m.scenario.machine_kind = "random-tree";
    } else {
        throw ConfigError("unknown demo: " + which);
    }
    return m;
}

int run_manifest(const RunManifest& m) {
    if (m.subcommand == "learn") return cmd_learn(m);
    if (m.subcommand == "gale") return cmd_gale(m);
    if (m.subcommand == "expand") return cmd_expand(m);
    if (m.subcommand == "census") return cmd_census(m);
    throw ConfigError("unknown subcommand: " + m.subcommand);
}

}  // namespace galelearn::cli
