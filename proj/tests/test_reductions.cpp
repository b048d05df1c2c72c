#include <doctest.h>

#include <algorithm>

#include "galelearn/errors.hpp"
#include "galelearn/reductions.hpp"
#include "galelearn/rng.hpp"

using namespace galelearn;
using namespace galelearn::reductions;
using seqcore::BitString;
using seqcore::LanguageOracle;

TEST_SUITE_BEGIN("reductions");

namespace {

SetValuedReduction empty_reduction() {
    return SetValuedReduction{"empty", [](const BitString&) { return std::vector<BitString>{}; },
                              [](uint64_t m) { return std::max<uint64_t>(m, 1); }};
}

// q = 2 machine asking "0" then "1" whatever happens; decision from the
// answer bits only.
OracleMachine two_query_machine(std::function<bool(const BitString& answers)> accept) {
    return OracleMachine{
        "two-query",
        [accept](const BitString&, const BitString& answers) {
            if (answers.length() >= 2) return MachineStep::decision(accept(answers));
            return MachineStep::ask(answers.empty() ? BitString("0") : BitString("1"));
        },
        [](uint64_t) { return uint64_t{2}; },
        [](uint64_t n) { return std::max<uint64_t>(n, 1); },
    };
}

}  // namespace

TEST_CASE("query universe of the identity reduction") {
    QueryUniverse q2 = enumerate_queries(reduction_identity(), 2);
    REQUIRE(q2.size() == 7);
    CHECK(q2.queries.front() == BitString());
    CHECK(q2.queries.back() == BitString("11"));
    CHECK(q2.index.at(BitString("01")) == 4);
}

TEST_CASE("query universe of the zeros reduction") {
    QueryUniverse q3 = enumerate_queries(reduction_zeros(), 3);
    REQUIRE(q3.size() == 4);
    for (uint64_t len = 0; len <= 3; ++len) {
        CHECK(q3.queries[len] == BitString::zeros(len));
    }
    CHECK(enumerate_queries(empty_reduction(), 3).size() == 0);
}

TEST_CASE("reduction contract violations are caught") {
    SetValuedReduction wide{"wide",
                            [](const BitString&) {
                                return std::vector<BitString>{BitString::zeros(9)};
                            },
                            [](uint64_t) { return uint64_t{2}; }};
    CHECK_THROWS_AS((void)apply_reduction(wide, BitString("0")), ContractError);
    CHECK_THROWS_AS((void)enumerate_queries(reduction_identity(), 20), ResourceError);
}

TEST_CASE("answer paths of an oracle-ignoring machine") {
    auto M = machine_oracle_ignoring();
    auto paths = answer_paths(M, BitString("101"));
    REQUIRE(paths.size() == 2);  // q = 1
    for (const auto& p : paths) {
        CHECK(p.queries.empty());
        CHECK(p.accepts);
    }
    auto rejecting = answer_paths(M, BitString("001"));
    CHECK(accepting_set(rejecting).empty());
    CHECK(accepting_set(paths).size() == 2);
}

TEST_CASE("answer paths of the self-query machine") {
    auto M = machine_self_query();
    auto paths = answer_paths(M, BitString("01"));
    REQUIRE(paths.size() == 2);
    auto z_x = accepting_set(paths);
    REQUIRE(z_x.size() == 1);
    CHECK(z_x.count(BitString("1")) == 1);
    for (const auto& p : paths) {
        REQUIRE(p.queries.size() == 1);
        CHECK(p.queries[0] == BitString("01"));
    }
}

TEST_CASE("adaptive chain produces diverging query trees") {
    auto M = machine_adaptive_chain(2);
    auto paths = answer_paths(M, BitString("10"));
    REQUIRE(paths.size() == 4);
    // First query identical, second depends on the first answer bit.
    std::set<BitString> second_queries;
    for (const auto& p : paths) {
        REQUIRE(p.queries.size() == 2);
        CHECK(p.queries[0] == paths[0].queries[0]);
        second_queries.insert(p.queries[1]);
    }
    CHECK(second_queries.size() == 2);
    // Accepts exactly when the final answer bit is 1.
    for (const auto& p : paths) {
        CHECK(p.accepts == (p.z.bit(1) == 1));
    }
}

TEST_CASE("machines that overrun their query bound are rejected") {
    OracleMachine bad{"bad",
                      [](const BitString&, const BitString&) {
                          return MachineStep::ask(BitString("0"));
                      },
                      [](uint64_t) { return uint64_t{2}; },
                      [](uint64_t) { return uint64_t{4}; }};
    CHECK_THROWS_AS((void)answer_paths(bad, BitString("0")), ContractError);
    CHECK_THROWS_AS((void)brute_force_oracle_run(bad, LanguageOracle::full_set(), BitString("0")),
                    ContractError);
}

TEST_CASE("tuple encoding is injective and decodable") {
    std::vector<BitString> a{BitString("01"), BitString()};
    std::vector<BitString> b{BitString("0"), BitString("1")};
    CHECK(encode_tuple(a) != encode_tuple(b));
    CHECK(decode_tuple(encode_tuple(a)) == a);
    CHECK(decode_tuple(encode_tuple({})) == std::vector<BitString>{});
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        std::vector<BitString> tuple;
        uint64_t parts = 1 + rng.below(3);
        for (uint64_t p = 0; p < parts; ++p) {
            tuple.push_back(seqcore::index_to_string(rng.below(200)));
        }
        CHECK(decode_tuple(encode_tuple(tuple)) == tuple);
    }
}

TEST_CASE("H_x of a two-query machine with a width-2 g") {
    auto M = two_query_machine([](const BitString& a) { return a == BitString("11"); });
    SetValuedReduction g{"pairs",
                         [](const BitString& bw) {
                             return std::vector<BitString>{bw.concat(BitString("0")),
                                                           bw.concat(BitString("1"))};
                         },
                         [](uint64_t m) { return m + 2; }};
    auto paths = answer_paths(M, BitString("0"));
    auto z_x = accepting_set(paths);
    REQUIRE(z_x.size() == 1);
    auto h_x = build_H_x(paths, z_x, g, 2, 2);
    CHECK(h_x.size() == 4);  // 2 x 2 product for the single accepting z

    CHECK(build_H_x(paths, {}, g, 2, 2).empty());
}

TEST_CASE("H_x deduplicates tuples shared across accepting answers") {
    // Accepts whenever the first answer is 1; g ignores the answer bit, so
    // both accepting answer strings produce the same tuple.
    auto M = two_query_machine([](const BitString& a) { return a.bit(0) == 1; });
    SetValuedReduction g{"suffix-only",
                         [](const BitString& bw) {
                             return std::vector<BitString>{bw.suffix_from(1)};
                         },
                         [](uint64_t m) { return std::max<uint64_t>(m, 1); }};
    auto paths = answer_paths(M, BitString("0"));
    auto z_x = accepting_set(paths);
    REQUIRE(z_x.size() == 2);
    auto h_x = build_H_x(paths, z_x, g, 1, 2);
    CHECK(h_x.size() == 1);
}

TEST_CASE("A_n counts tuples over the available members") {
    CHECK(build_A_n(LanguageOracle::empty_set(), 3, 2).empty());
    auto two = LanguageOracle::from_strings("two", {BitString("0"), BitString("1")});
    auto a_n = build_A_n(two, 1, 2);
    CHECK(a_n.size() == 6);  // 2 singles + 4 pairs
    // Membership matches the definition.
    CHECK(a_n.count(encode_tuple({BitString("0")})) == 1);
    CHECK(a_n.count(encode_tuple({BitString("1"), BitString("0")})) == 1);
    CHECK(a_n.count(encode_tuple({BitString("00")})) == 0);  // not in U
    CHECK(a_n.count(encode_tuple({BitString("0"), BitString("0"), BitString("0")})) == 0);
    CHECK_THROWS_AS((void)build_A_n(LanguageOracle::full_set(), 10, 3, 1000), ResourceError);
}

TEST_CASE("expansion agrees with the brute-force oracle run") {
    for (uint64_t seed : {11u, 12u, 13u, 14u}) {
        ScenarioParams params;
        params.lengths = {4};
        params.query_count = 1 + seed % 3;
        params.g_width = 1 + seed % 2;
        auto scenario = synthesize_scenario(seed, ScenarioKind::Turing, params);
        const auto& M = *scenario.machine;
        uint64_t n = 4;
        auto a_n = build_A_n(*scenario.U, scenario.r_length_bound(n), params.query_count);
        uint64_t r_count = scenario.g->poly_bound(1 + M.query_length_bound(n));
        for (uint64_t i = 0; i < (uint64_t{1} << (n + 1)) - 1; ++i) {
            BitString x = seqcore::index_to_string(i);
            auto paths = answer_paths(M, x);
            auto h_x =
                build_H_x(paths, accepting_set(paths), *scenario.g, r_count, params.query_count);
            bool via_expansion = membership_via_expansion(h_x, a_n);
            bool brute = brute_force_oracle_run(M, scenario.S, x);
            CHECK(via_expansion == brute);
            CHECK(brute == scenario.reduced_language.contains(x));
        }
    }
}

TEST_CASE("disjunctive instance matches direct evaluation") {
    auto f = reduction_identity();
    auto S = LanguageOracle::tally();
    auto inst = make_disjunctive_instance(f, S, 4, Rat(4, 5));
    // Target variables are the tally strings' indices in Q_4.
    CHECK(inst.target_variables.size() == 5);
    auto red = disjunctive_to_concept(f, S, {4}, Rat(4, 5));
    auto target = red.target(4);
    REQUIRE(target.has_value());
    for (uint64_t i = 0; i < 31; ++i) {
        BitString x = seqcore::index_to_string(i);
        bool direct = false;
        for (const auto& q : apply_reduction(f, x)) direct = direct || S.contains(q);
        CHECK(target->label(red.example(4, i)) == direct);
    }
    // Empty intersection: every example with nonempty f(x) is negative.
    auto none = disjunctive_to_concept(f, LanguageOracle::empty_set(), {3}, Rat(4, 5));
    auto empty_target = none.target(3);
    for (uint64_t i = 0; i < 15; ++i) {
        CHECK_FALSE(empty_target->label(none.example(3, i)));
    }
    CHECK(empty_target->size == 0);
}

TEST_CASE("conjunctive instance matches direct evaluation") {
    auto f = reduction_seeded_random(21);
    auto S = LanguageOracle::seeded_random(9, 2, 3);
    auto red = conjunctive_to_concept(f, S, {5}, Rat(4, 5));
    auto target = red.target(5);
    REQUIRE(target.has_value());
    for (uint64_t i = 0; i < 63; ++i) {
        BitString x = seqcore::index_to_string(i);
        bool direct = true;
        for (const auto& q : apply_reduction(f, x)) direct = direct && S.contains(q);
        CHECK(target->label(red.example(5, i)) == direct);
    }
    // f(x) = empty set: vacuously positive.
    auto vac = conjunctive_to_concept(empty_reduction(), S, {3}, Rat(4, 5));
    auto vtarget = vac.target(3);
    for (uint64_t i = 0; i < 15; ++i) {
        CHECK(vtarget->label(vac.example(3, i)));
    }
}

TEST_CASE("good lengths follow the literal budget") {
    auto f = reduction_identity();
    auto S = LanguageOracle::tally();
    // n = 4: |S cap Q_4| = 5; 2^{4^{0.8}} is about 8.2: good.
    CHECK(make_disjunctive_instance(f, S, 4, Rat(4, 5)).good);
    // With epsilon = 1/2: 2^{4^{0.5}} = 4 < 5: not good.
    CHECK_FALSE(make_disjunctive_instance(f, S, 4, Rat(1, 2)).good);
    auto red = disjunctive_to_concept(f, S, {4, 6, 8}, Rat(4, 5));
    CHECK(red.good_lengths == std::set<uint64_t>{4, 6, 8});
}

TEST_CASE("turing instance encodes the expansion as a disjunction") {
    ScenarioParams params;
    params.lengths = {5};
    params.query_count = 2;
    auto scenario = synthesize_scenario(31, ScenarioKind::Turing, params);
    auto inst =
        make_turing_instance(scenario, compiler::ConceptReduction::Mode::Weak, 5, Rat(4, 5));
    auto red = turing_to_concept(scenario, compiler::ConceptReduction::Mode::Weak, {5}, Rat(4, 5));
    auto target = red.target(5);
    REQUIRE(target.has_value());
    for (uint64_t i = 0; i < 63; ++i) {
        BitString x = seqcore::index_to_string(i);
        bool via_concept = target->label(red.example(5, i));
        bool brute = brute_force_oracle_run(*scenario.machine, scenario.S, x);
        CHECK(via_concept == brute);
        // Same predicate through the raw expansion.
        const auto& positions = inst.example_positions[i];
        std::set<BitString> h_x;
        for (uint64_t p : positions) h_x.insert(inst.H_n[p]);
        CHECK(membership_via_expansion(h_x, inst.A_n) == brute);
    }
    CHECK(inst.hn_in_bound);  // |H_n| <= 2^{10} here
}

TEST_CASE("strong-mode turing instance covers exactly one block") {
    ScenarioParams params;
    params.lengths = {4};
    params.query_count = 2;
    auto scenario = synthesize_scenario(77, ScenarioKind::Turing, params);
    auto inst =
        make_turing_instance(scenario, compiler::ConceptReduction::Mode::Strong, 4, Rat(4, 5));
    CHECK(inst.first_input_index == 15);
    CHECK(inst.example_positions.size() == 16);  // the 2^4 strings of length 4
}

TEST_CASE("scenario synthesis is deterministic in the seed") {
    ScenarioParams params;
    params.lengths = {4};
    params.query_count = 2;
    auto one = synthesize_scenario(5, ScenarioKind::Turing, params);
    auto two = synthesize_scenario(5, ScenarioKind::Turing, params);
    auto other = synthesize_scenario(6, ScenarioKind::Turing, params);
    auto prefix = [](const SyntheticScenario& s) {
        return seqcore::characteristic_prefix(s.reduced_language, 63).str();
    };
    CHECK(prefix(one) == prefix(two));
    CHECK(prefix(one) != prefix(other));
    auto inst_one =
        make_turing_instance(one, compiler::ConceptReduction::Mode::Weak, 4, Rat(4, 5));
    auto inst_two =
        make_turing_instance(two, compiler::ConceptReduction::Mode::Weak, 4, Rat(4, 5));
    CHECK(inst_one.H_n == inst_two.H_n);
}

TEST_CASE("section-4 scenarios expose the reduced language") {
    ScenarioParams params;
    params.lengths = {4};
    params.f_kind = "zeros";
    params.oracle_kind = "tally";
    auto scenario = synthesize_scenario(1, ScenarioKind::Disjunctive, params);
    // f(x) = {0^{|x|}} always lands in the tally set.
    for (uint64_t i = 0; i < 31; ++i) {
        CHECK(scenario.reduced_language.contains(seqcore::index_to_string(i)));
    }
    params.oracle_kind = "empty";
    auto nothing = synthesize_scenario(1, ScenarioKind::Conjunctive, params);
    for (uint64_t i = 0; i < 31; ++i) {
        CHECK_FALSE(nothing.reduced_language.contains(seqcore::index_to_string(i)));
    }
}

TEST_SUITE_END();
