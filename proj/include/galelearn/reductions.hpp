#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "galelearn/compiler.hpp"
#include "galelearn/oracle.hpp"
#include "galelearn/rat.hpp"

namespace galelearn::reductions {

using seqcore::BitString;
using seqcore::LanguageOracle;

// A set-valued reduction (disjunctive or conjunctive f, and the g of the
// answer-path expansion). poly_bound(m) bounds both the output count and
// every output string's length on inputs of length <= m, the way a single
// time polynomial bounds both in the source constructions.
struct SetValuedReduction {
    std::string name;
    std::function<std::vector<BitString>(const BitString&)> map;
    std::function<uint64_t(uint64_t)> poly_bound;
};

// map(x) canonically sorted and deduplicated, with the count and length
// contracts enforced (ContractError on violation).
std::vector<BitString> apply_reduction(const SetValuedReduction& f, const BitString& x);

// Q_n = union of f(x) over |x| <= n, in canonical order, with the size
// contract |Q_n| <= 2^{n+1} p(n) asserted.
struct QueryUniverse {
    uint64_t n = 0;
    std::vector<BitString> queries;
    std::map<BitString, uint64_t> index;

    uint64_t size() const { return queries.size(); }
};

QueryUniverse enumerate_queries(const SetValuedReduction& f, uint64_t n,
                                uint64_t cap = seqcore::kDefaultEnumerationCap);

// ---------------------------------------------------------------------------
// Oracle machines and the answer-path expansion.

struct MachineStep {
    bool decided = false;
    bool accept = false;
    BitString query;

    static MachineStep decision(bool accept) { return MachineStep{true, accept, BitString()}; }
    static MachineStep ask(BitString query) { return MachineStep{false, false, std::move(query)}; }
};

// A deterministic adaptive oracle machine: given the input and the answers
// received so far, either asks the next query or decides. At most
// query_bound(|x|) queries per input (enforced), each of length at most
// query_length_bound(|x|).
struct OracleMachine {
    std::string name;
    std::function<MachineStep(const BitString& x, const BitString& answers)> step;
    std::function<uint64_t(uint64_t)> query_bound;
    std::function<uint64_t(uint64_t)> query_length_bound;
};

struct AnswerPath {
    BitString z;                     // the full answer string driving this path
    std::vector<BitString> queries;  // w_0 .. w_k, truncated at the decision
    bool accepts = false;
};

// Runs M on x once per answer string z in {0,1}^{q(|x|)}, feeding z's bits
// as successive oracle answers.
std::vector<AnswerPath> answer_paths(const OracleMachine& M, const BitString& x,
                                     uint64_t answer_bits_cap = 12);

// Z_x: the set of answer strings that make M accept.
std::set<BitString> accepting_set(const std::vector<AnswerPath>& paths);

// Injective tuple encoding: each component u becomes 1^{|u|} 0 u.
BitString encode_tuple(const std::vector<BitString>& components);
std::vector<BitString> decode_tuple(const BitString& encoded);

// H_x: over every accepting path, the product of g's candidate sets along
// the answered queries, as encoded tuples. Asserts the size contract
// |H_x| <= |Z_x| r^q <= 2^{q (1 + log2 r)}.
std::set<BitString> build_H_x(const std::vector<AnswerPath>& paths,
                              const std::set<BitString>& Z_x, const SetValuedReduction& g,
                              uint64_t r_count_bound, uint64_t q_bound);

// A_n: all encoded tuples of 1..q components from U_{<= r_len}. Asserts
// |A_n| <= q |U_{<= r_len}|^q; refuses blowups past the cap.
std::set<BitString> build_A_n(const LanguageOracle& U, uint64_t r_len, uint64_t q_count,
                              uint64_t tuple_cap = 200000,
                              uint64_t enum_cap = seqcore::kDefaultEnumerationCap);

// x in L iff H_x and A_n intersect.
bool membership_via_expansion(const std::set<BitString>& H_x, const std::set<BitString>& A_n);

// Ground truth: simulate M with queries answered by S itself.
bool brute_force_oracle_run(const OracleMachine& M, const LanguageOracle& S, const BitString& x);

// Built-in machines.
OracleMachine machine_oracle_ignoring();          // accepts iff x starts with 1; no queries
OracleMachine machine_self_query();               // one query: x itself
OracleMachine machine_adaptive_chain(uint64_t q);  // next query depends on the last answer
OracleMachine machine_majority(uint64_t q);        // nonadaptive, majority of answers
// Seeded decision tree; always asks at least one query, may decide early.
OracleMachine machine_random_tree(uint64_t seed, uint64_t q);

// ---------------------------------------------------------------------------
// Synthetic scenarios: concrete instantiations of the existential objects
// (S, U, g, M) the section-4/5 statements quantify over.

enum class ScenarioKind { Disjunctive, Conjunctive, Turing };

struct ScenarioParams {
    std::vector<uint64_t> lengths;   // the n values pipelines will run at
    Rat density_epsilon = Rat(4, 5);  // budget exponent for good lengths
    std::string oracle_kind = "tally";  // tally|empty|full|even|random-rate|random-sparse
    std::string f_kind = "identity";    // identity|zeros|random (section 4)
    std::string machine_kind = "random-tree";  // turing
    uint64_t query_count = 2;           // turing: constant q
    uint64_t g_width = 1;               // turing: candidates per g output (1 or 2)
};

struct SyntheticScenario {
    uint64_t seed = 0;
    ScenarioKind kind = ScenarioKind::Disjunctive;
    ScenarioParams params;
    LanguageOracle S;
    LanguageOracle reduced_language;  // A (section 4) or L(M^S) (section 5)
    std::optional<SetValuedReduction> f;  // section 4
    // Turing machinery:
    std::optional<OracleMachine> machine;
    std::optional<SetValuedReduction> g;
    std::optional<LanguageOracle> U;

    uint64_t r_length_bound(uint64_t n) const;  // max |g output| = 1 + machine query length
};

// Deterministic in the seed; the turing kind verifies the g/U consistency
// invariant exhaustively at desk lengths before returning.
SyntheticScenario synthesize_scenario(uint64_t seed, ScenarioKind kind,
                                      const ScenarioParams& params);

// ---------------------------------------------------------------------------
// Per-length concept instances and the reduction-to-concepts adapters.

struct DisjunctiveInstance {
    QueryUniverse universe;
    std::vector<uint64_t> target_variables;  // indices of S-members of Q_n
    bool good = false;                        // |S cap Q_n| <= 2^{n^eps}
    double budget_log2 = 0;                   // n^eps
};

DisjunctiveInstance make_disjunctive_instance(const SetValuedReduction& f,
                                              const LanguageOracle& S, uint64_t n,
                                              const Rat& density_epsilon);

struct ConjunctiveInstance {
    QueryUniverse universe;
    std::vector<uint64_t> target_members;  // X = indices of S-members of Q_n
    bool good = false;
    double budget_log2 = 0;
};

ConjunctiveInstance make_conjunctive_instance(const SetValuedReduction& f,
                                              const LanguageOracle& S, uint64_t n,
                                              const Rat& density_epsilon);

struct TuringInstance {
    uint64_t n = 0;
    std::vector<BitString> H_n;  // canonical enumeration
    std::map<BitString, uint64_t> index;
    std::set<BitString> A_n;
    std::vector<uint64_t> target_variables;  // indices of A_n members within H_n
    // Example positions per input index (offset by the first covered index).
    uint64_t first_input_index = 0;
    std::vector<std::vector<uint64_t>> example_positions;
    std::vector<uint64_t> zx_sizes;  // |Z_x| per input, same offset
    bool good = false;               // literal count within the budget
    bool census_ok = false;          // |U_{<= r(n)}| <= 2^{n^eps}
    bool hn_in_bound = false;        // |H_n| <= 2^{2n} (reported, asymptotic)
    double budget_log2 = 0;
};

TuringInstance make_turing_instance(const SyntheticScenario& scenario,
                                    compiler::ConceptReduction::Mode mode, uint64_t n,
                                    const Rat& delta_budget);

// Adapters feeding the gale compiler. Instances for every listed length are
// built eagerly; good_lengths reflects the per-length budget checks.
compiler::ConceptReduction disjunctive_to_concept(const SetValuedReduction& f,
                                                  const LanguageOracle& S,
                                                  const std::vector<uint64_t>& lengths,
                                                  const Rat& density_epsilon);

compiler::ConceptReduction conjunctive_to_concept(const SetValuedReduction& f,
                                                  const LanguageOracle& S,
                                                  const std::vector<uint64_t>& lengths,
                                                  const Rat& density_epsilon);

compiler::ConceptReduction turing_to_concept(const SyntheticScenario& scenario,
                                             compiler::ConceptReduction::Mode mode,
                                             const std::vector<uint64_t>& lengths,
                                             const Rat& delta_budget);

// Built-in section-4 reductions.
SetValuedReduction reduction_identity();                 // {x}
SetValuedReduction reduction_zeros();                    // {0^{|x|}}
SetValuedReduction reduction_seeded_random(uint64_t seed);  // 1..3 seeded queries

}  // namespace galelearn::reductions
