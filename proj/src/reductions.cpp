#include "galelearn/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "galelearn/errors.hpp"

namespace galelearn::reductions {

std::vector<BitString> apply_reduction(const SetValuedReduction& f, const BitString& x) {
    std::vector<BitString> out = f.map(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    uint64_t bound = f.poly_bound(x.length());
    if (out.size() > bound) {
        throw ContractError("reduction '" + f.name + "' emitted " + std::to_string(out.size()) +
                            " queries on a length-" + std::to_string(x.length()) +
                            " input, over its bound " + std::to_string(bound));
    }
    for (const auto& q : out) {
        if (q.length() > bound) {
            throw ContractError("reduction '" + f.name + "' emitted a query of length " +
                                std::to_string(q.length()) + ", over its bound " +
                                std::to_string(bound));
        }
    }
    return out;
}

QueryUniverse enumerate_queries(const SetValuedReduction& f, uint64_t n, uint64_t cap) {
    if (n > cap) {
        throw ResourceError("enumerate_queries: n exceeds the cap");
    }
    QueryUniverse universe;
    universe.n = n;
    std::set<BitString> seen;
    uint64_t total = (uint64_t{1} << (n + 1)) - 1;
    for (uint64_t i = 0; i < total; ++i) {
        for (auto& q : apply_reduction(f, seqcore::index_to_string(i))) {
            seen.insert(std::move(q));
        }
    }
    mpz_class limit = (mpz_class(1) << static_cast<unsigned>(n + 1)) *
                      static_cast<unsigned long>(f.poly_bound(n));
    if (mpz_class(static_cast<unsigned long>(seen.size())) > limit) {
        throw ContractError("query universe exceeds 2^{n+1} p(n)");
    }
    universe.queries.assign(seen.begin(), seen.end());
    for (uint64_t i = 0; i < universe.queries.size(); ++i) {
        universe.index.emplace(universe.queries[i], i);
    }
    return universe;
}

std::vector<AnswerPath> answer_paths(const OracleMachine& M, const BitString& x,
                                     uint64_t answer_bits_cap) {
    uint64_t q = M.query_bound(x.length());
    if (q > answer_bits_cap) {
        throw ResourceError("answer_paths: machine query bound " + std::to_string(q) +
                            " exceeds the answer-bits cap");
    }
    uint64_t len_bound = M.query_length_bound(x.length());
    std::vector<AnswerPath> paths;
    paths.reserve(uint64_t{1} << q);
    for (uint64_t v = 0; v < (uint64_t{1} << q); ++v) {
        AnswerPath path;
        std::string zbits(q, '0');
        for (uint64_t b = 0; b < q; ++b) {
            if ((v >> (q - 1 - b)) & 1ULL) zbits[b] = '1';
        }
        path.z = BitString(zbits);
        BitString answers;
        for (;;) {
            MachineStep step = M.step(x, answers);
            if (step.decided) {
                path.accepts = step.accept;
                break;
            }
            if (path.queries.size() >= q) {
                throw ContractError("machine '" + M.name + "' exceeded its query bound");
            }
            if (step.query.length() > len_bound) {
                throw ContractError("machine '" + M.name + "' emitted an over-long query");
            }
            answers = answers.append(path.z.bit(path.queries.size()));
            path.queries.push_back(std::move(step.query));
        }
        paths.push_back(std::move(path));
    }
    return paths;
}

std::set<BitString> accepting_set(const std::vector<AnswerPath>& paths) {
    std::set<BitString> z_set;
    for (const auto& path : paths) {
        if (path.accepts) z_set.insert(path.z);
    }
    return z_set;
}

BitString encode_tuple(const std::vector<BitString>& components) {
    BitString out;
    for (const auto& u : components) {
        out = out.concat(BitString::ones(u.length())).append(0).concat(u);
    }
    return out;
}

std::vector<BitString> decode_tuple(const BitString& encoded) {
    std::vector<BitString> out;
    size_t i = 0;
    while (i < encoded.length()) {
        size_t len = 0;
        while (i < encoded.length() && encoded.bit(i) == 1) {
            ++len;
            ++i;
        }
        if (i >= encoded.length() || encoded.bit(i) != 0) {
            throw ContractError("malformed tuple encoding");
        }
        ++i;  // separator
        if (i + len > encoded.length()) {
            throw ContractError("malformed tuple encoding");
        }
        std::string bits;
        for (size_t k = 0; k < len; ++k) bits.push_back(encoded.bit(i + k) ? '1' : '0');
        out.emplace_back(bits);
        i += len;
    }
    return out;
}

std::set<BitString> build_H_x(const std::vector<AnswerPath>& paths,
                              const std::set<BitString>& Z_x, const SetValuedReduction& g,
                              uint64_t r_count_bound, uint64_t q_bound) {
    std::set<BitString> H_x;
    for (const auto& path : paths) {
        if (Z_x.count(path.z) == 0) continue;
        // Candidate lists per answered query position.
        std::vector<std::vector<BitString>> options;
        options.reserve(path.queries.size());
        bool empty_factor = false;
        for (size_t j = 0; j < path.queries.size(); ++j) {
            BitString prefixed = BitString(path.z.bit(j) ? "1" : "0").concat(path.queries[j]);
            options.push_back(apply_reduction(g, prefixed));
            if (options.back().empty()) empty_factor = true;
        }
        if (empty_factor || options.empty()) continue;
        // Odometer over the Cartesian product.
        std::vector<size_t> pick(options.size(), 0);
        std::vector<BitString> tuple(options.size());
        for (;;) {
            for (size_t j = 0; j < options.size(); ++j) tuple[j] = options[j][pick[j]];
            H_x.insert(encode_tuple(tuple));
            size_t j = 0;
            while (j < pick.size()) {
                if (++pick[j] < options[j].size()) break;
                pick[j] = 0;
                ++j;
            }
            if (j == pick.size()) break;
        }
    }
    // Size contract, zero tolerance: |H_x| <= |Z_x| r^q, and the derived
    // 2^{q(1 + log2 r)} form.
    mpz_class r_pow;
    mpz_ui_pow_ui(r_pow.get_mpz_t(), static_cast<unsigned long>(r_count_bound),
                  static_cast<unsigned long>(q_bound));
    mpz_class limit = mpz_class(static_cast<unsigned long>(Z_x.size())) * r_pow;
    if (mpz_class(static_cast<unsigned long>(H_x.size())) > limit) {
        throw ContractError("|H_x| exceeds |Z_x| r^q");
    }
    if (!H_x.empty() && r_count_bound >= 1) {
        double log_bound = static_cast<double>(q_bound) *
                           (1.0 + std::log2(static_cast<double>(r_count_bound)));
        if (std::log2(static_cast<double>(H_x.size())) > log_bound + 1e-9) {
            throw ContractError("|H_x| exceeds 2^{q(1 + log2 r)}");
        }
    }
    return H_x;
}

std::set<BitString> build_A_n(const LanguageOracle& U, uint64_t r_len, uint64_t q_count,
                              uint64_t tuple_cap, uint64_t enum_cap) {
    if (r_len > enum_cap) {
        throw ResourceError("build_A_n: r(n) exceeds the enumeration cap");
    }
    std::vector<BitString> members;
    uint64_t total = (uint64_t{1} << (r_len + 1)) - 1;
    for (uint64_t i = 0; i < total; ++i) {
        BitString candidate = seqcore::index_to_string(i);
        if (U.contains(candidate)) members.push_back(candidate);
    }
    mpz_class expected(0);
    for (uint64_t t = 1; t <= q_count; ++t) {
        mpz_class m_pow;
        mpz_ui_pow_ui(m_pow.get_mpz_t(), static_cast<unsigned long>(members.size()),
                      static_cast<unsigned long>(t));
        expected += m_pow;
    }
    if (expected > static_cast<unsigned long>(tuple_cap)) {
        throw ResourceError("build_A_n: tuple count would exceed the cap");
    }
    std::set<BitString> A_n;
    std::vector<BitString> tuple;
    for (uint64_t t = 1; t <= q_count && !members.empty(); ++t) {
        std::vector<size_t> pick(t, 0);
        tuple.assign(t, BitString());
        for (;;) {
            for (size_t j = 0; j < t; ++j) tuple[j] = members[pick[j]];
            A_n.insert(encode_tuple(tuple));
            size_t j = 0;
            while (j < t) {
                if (++pick[j] < members.size()) break;
                pick[j] = 0;
                ++j;
            }
            if (j == t) break;
        }
    }
    mpz_class m_pow;
    mpz_ui_pow_ui(m_pow.get_mpz_t(), static_cast<unsigned long>(members.size()),
                  static_cast<unsigned long>(q_count));
    if (mpz_class(static_cast<unsigned long>(A_n.size())) >
        mpz_class(static_cast<unsigned long>(q_count)) * m_pow) {
        throw ContractError("|A_n| exceeds q |U|^q");
    }
    return A_n;
}

bool membership_via_expansion(const std::set<BitString>& H_x, const std::set<BitString>& A_n) {
    const auto& small = H_x.size() <= A_n.size() ? H_x : A_n;
    const auto& large = H_x.size() <= A_n.size() ? A_n : H_x;
    for (const auto& tuple : small) {
        if (large.count(tuple)) return true;
    }
    return false;
}

bool brute_force_oracle_run(const OracleMachine& M, const LanguageOracle& S, const BitString& x) {
    uint64_t q = M.query_bound(x.length());
    uint64_t len_bound = M.query_length_bound(x.length());
    BitString answers;
    uint64_t asked = 0;
    for (;;) {
        MachineStep step = M.step(x, answers);
        if (step.decided) return step.accept;
        if (asked >= q) {
            throw ContractError("machine '" + M.name + "' exceeded its query bound");
        }
        if (step.query.length() > len_bound) {
            throw ContractError("machine '" + M.name + "' emitted an over-long query");
        }
        ++asked;
        answers = answers.append(S.contains(step.query) ? 1 : 0);
    }
}

// ---------------------------------------------------------------------------
// Concept instances.

namespace {

double budget_exponent(uint64_t n, const Rat& epsilon) {
    return std::pow(static_cast<double>(n), rat_double(epsilon));
}

bool within_budget(uint64_t count, double budget_log2) {
    if (count == 0) return true;
    return std::log2(static_cast<double>(count)) <= budget_log2;
}

}  // namespace

DisjunctiveInstance make_disjunctive_instance(const SetValuedReduction& f,
                                              const LanguageOracle& S, uint64_t n,
                                              const Rat& density_epsilon) {
    DisjunctiveInstance inst;
    inst.universe = enumerate_queries(f, n);
    for (uint64_t i = 0; i < inst.universe.size(); ++i) {
        if (S.contains(inst.universe.queries[i])) inst.target_variables.push_back(i);
    }
    inst.budget_log2 = budget_exponent(n, density_epsilon);
    inst.good = within_budget(inst.target_variables.size(), inst.budget_log2);
    return inst;
}

ConjunctiveInstance make_conjunctive_instance(const SetValuedReduction& f,
                                              const LanguageOracle& S, uint64_t n,
                                              const Rat& density_epsilon) {
    ConjunctiveInstance inst;
    inst.universe = enumerate_queries(f, n);
    for (uint64_t i = 0; i < inst.universe.size(); ++i) {
        if (S.contains(inst.universe.queries[i])) inst.target_members.push_back(i);
    }
    inst.budget_log2 = budget_exponent(n, density_epsilon);
    inst.good = within_budget(inst.target_members.size(), inst.budget_log2);
    return inst;
}

TuringInstance make_turing_instance(const SyntheticScenario& scenario,
                                    compiler::ConceptReduction::Mode mode, uint64_t n,
                                    const Rat& delta_budget) {
    if (scenario.kind != ScenarioKind::Turing) {
        throw ConfigError("turing instances need a turing scenario");
    }
    const OracleMachine& M = *scenario.machine;
    const SetValuedReduction& g = *scenario.g;
    const LanguageOracle& U = *scenario.U;

    TuringInstance inst;
    inst.n = n;
    bool weak = mode == compiler::ConceptReduction::Mode::Weak;
    inst.first_input_index = weak ? 0 : (uint64_t{1} << n) - 1;
    uint64_t end_index = (uint64_t{1} << (n + 1)) - 1;

    uint64_t q = M.query_bound(n);
    uint64_t r_len = scenario.r_length_bound(n);
    uint64_t r_count = g.poly_bound(1 + M.query_length_bound(n));

    // Per-input expansions, then the canonical H_n enumeration.
    std::vector<std::set<BitString>> hx_sets;
    std::set<BitString> h_union;
    for (uint64_t i = inst.first_input_index; i < end_index; ++i) {
        BitString x = seqcore::index_to_string(i);
        auto paths = answer_paths(M, x);
        auto z_x = accepting_set(paths);
        auto h_x = build_H_x(paths, z_x, g, r_count, q);
        inst.zx_sizes.push_back(z_x.size());
        h_union.insert(h_x.begin(), h_x.end());
        hx_sets.push_back(std::move(h_x));
    }
    inst.H_n.assign(h_union.begin(), h_union.end());
    for (uint64_t i = 0; i < inst.H_n.size(); ++i) inst.index.emplace(inst.H_n[i], i);
    for (auto& h_x : hx_sets) {
        std::vector<uint64_t> positions;
        positions.reserve(h_x.size());
        for (const auto& tuple : h_x) positions.push_back(inst.index.at(tuple));
        inst.example_positions.push_back(std::move(positions));
    }

    inst.A_n = build_A_n(U, r_len, q);
    for (uint64_t i = 0; i < inst.H_n.size(); ++i) {
        if (inst.A_n.count(inst.H_n[i])) inst.target_variables.push_back(i);
    }

    uint64_t u_below_r = 0;
    for (uint64_t i = 0; i < (uint64_t{1} << (r_len + 1)) - 1; ++i) {
        if (U.contains(seqcore::index_to_string(i))) ++u_below_r;
    }

    // Budgets: 2^{n^delta} in weak mode; 2^{v(n)} with
    // v(n) = f(n) log2 q(n) + log2 f(n) in strong mode, instantiating the
    // sparsity polynomial by the measured |U_{<= r(n)}|.
    if (weak) {
        inst.budget_log2 = budget_exponent(n, delta_budget);
    } else {
        double f_queries = static_cast<double>(std::max<uint64_t>(q, 1));
        inst.budget_log2 = u_below_r == 0 ? std::log2(f_queries)
                                          : f_queries * std::log2(static_cast<double>(u_below_r)) +
                                                std::log2(f_queries);
    }
    inst.good = within_budget(inst.target_variables.size(), inst.budget_log2);
    inst.census_ok =
        within_budget(u_below_r, budget_exponent(n, scenario.params.density_epsilon));

    // |H_n| <= 2^{2n}: asymptotic, reported only.
    inst.hn_in_bound = inst.H_n.size() <= (uint64_t{1} << std::min<uint64_t>(2 * n, 63));
    return inst;
}

// ---------------------------------------------------------------------------
// Adapters feeding the gale compiler.

namespace {

learn::SparseExample example_over_universe(const QueryUniverse& universe,
                                           const std::vector<BitString>& queries) {
    std::vector<uint64_t> positions;
    positions.reserve(queries.size());
    for (const auto& q : queries) positions.push_back(universe.index.at(q));
    return learn::SparseExample::from_positions(universe.size(), std::move(positions));
}

template <typename Instance>
const Instance& instance_at(const std::map<uint64_t, Instance>& cache, uint64_t n) {
    auto it = cache.find(n);
    if (it == cache.end()) {
        throw ConfigError("length " + std::to_string(n) + " not materialized in this reduction");
    }
    return it->second;
}

compiler::TargetConcept disjunction_target(std::vector<uint64_t> variables) {
    auto vars = std::make_shared<std::vector<uint64_t>>(std::move(variables));
    compiler::TargetConcept target;
    target.size = vars->size();
    target.label = [vars](const learn::SparseExample& x) {
        for (uint64_t pos : x.ones) {
            if (std::binary_search(vars->begin(), vars->end(), pos)) return true;
        }
        return false;
    };
    return target;
}

}  // namespace

compiler::ConceptReduction disjunctive_to_concept(const SetValuedReduction& f,
                                                  const LanguageOracle& S,
                                                  const std::vector<uint64_t>& lengths,
                                                  const Rat& density_epsilon) {
    auto cache = std::make_shared<std::map<uint64_t, DisjunctiveInstance>>();
    for (uint64_t n : lengths) {
        cache->emplace(n, make_disjunctive_instance(f, S, n, density_epsilon));
    }
    compiler::ConceptReduction red;
    red.mode = compiler::ConceptReduction::Mode::Weak;
    red.universe_size = [cache](uint64_t n) { return instance_at(*cache, n).universe.size(); };
    red.example = [cache, f](uint64_t n, uint64_t index) {
        const auto& inst = instance_at(*cache, n);
        return example_over_universe(inst.universe,
                                     apply_reduction(f, seqcore::index_to_string(index)));
    };
    red.target = [cache](uint64_t n) -> std::optional<compiler::TargetConcept> {
        return disjunction_target(instance_at(*cache, n).target_variables);
    };
    red.concept_class = [cache](uint64_t n) {
        return compiler::ConceptClassInfo{"monotone-disjunction",
                                          instance_at(*cache, n).budget_log2};
    };
    for (uint64_t n : lengths) {
        if (cache->at(n).good) red.good_lengths.insert(n);
    }
    return red;
}

compiler::ConceptReduction conjunctive_to_concept(const SetValuedReduction& f,
                                                  const LanguageOracle& S,
                                                  const std::vector<uint64_t>& lengths,
                                                  const Rat& density_epsilon) {
    auto cache = std::make_shared<std::map<uint64_t, ConjunctiveInstance>>();
    for (uint64_t n : lengths) {
        cache->emplace(n, make_conjunctive_instance(f, S, n, density_epsilon));
    }
    compiler::ConceptReduction red;
    red.mode = compiler::ConceptReduction::Mode::Weak;
    red.universe_size = [cache](uint64_t n) { return instance_at(*cache, n).universe.size(); };
    red.example = [cache, f](uint64_t n, uint64_t index) {
        const auto& inst = instance_at(*cache, n);
        return example_over_universe(inst.universe,
                                     apply_reduction(f, seqcore::index_to_string(index)));
    };
    red.target = [cache](uint64_t n) -> std::optional<compiler::TargetConcept> {
        const auto& inst = instance_at(*cache, n);
        auto members = std::make_shared<std::vector<uint64_t>>(inst.target_members);
        compiler::TargetConcept target;
        target.size = members->size();
        target.label = [members](const learn::SparseExample& x) {
            for (uint64_t pos : x.ones) {
                if (!std::binary_search(members->begin(), members->end(), pos)) return false;
            }
            return true;
        };
        return target;
    };
    red.concept_class = [cache](uint64_t n) {
        return compiler::ConceptClassInfo{"subset-concept", instance_at(*cache, n).budget_log2};
    };
    for (uint64_t n : lengths) {
        if (cache->at(n).good) red.good_lengths.insert(n);
    }
    return red;
}

compiler::ConceptReduction turing_to_concept(const SyntheticScenario& scenario,
                                             compiler::ConceptReduction::Mode mode,
                                             const std::vector<uint64_t>& lengths,
                                             const Rat& delta_budget) {
    auto cache = std::make_shared<std::map<uint64_t, TuringInstance>>();
    for (uint64_t n : lengths) {
        cache->emplace(n, make_turing_instance(scenario, mode, n, delta_budget));
    }
    compiler::ConceptReduction red;
    red.mode = mode;
    red.universe_size = [cache](uint64_t n) {
        return static_cast<uint64_t>(instance_at(*cache, n).H_n.size());
    };
    red.example = [cache](uint64_t n, uint64_t index) {
        const auto& inst = instance_at(*cache, n);
        if (index < inst.first_input_index ||
            index - inst.first_input_index >= inst.example_positions.size()) {
            throw ConfigError("input index outside the instance range");
        }
        return learn::SparseExample::from_positions(
            inst.H_n.size(),
            std::vector<uint64_t>(inst.example_positions[index - inst.first_input_index]));
    };
    red.target = [cache](uint64_t n) -> std::optional<compiler::TargetConcept> {
        return disjunction_target(instance_at(*cache, n).target_variables);
    };
    red.concept_class = [cache](uint64_t n) {
        return compiler::ConceptClassInfo{"monotone-disjunction",
                                          instance_at(*cache, n).budget_log2};
    };
    for (uint64_t n : lengths) {
        if (cache->at(n).good) red.good_lengths.insert(n);
    }
    return red;
}

SetValuedReduction reduction_identity() {
    return SetValuedReduction{"identity",
                              [](const BitString& x) { return std::vector<BitString>{x}; },
                              [](uint64_t m) { return std::max<uint64_t>(m, 1); }};
}

SetValuedReduction reduction_zeros() {
    return SetValuedReduction{
        "zeros",
        [](const BitString& x) { return std::vector<BitString>{BitString::zeros(x.length())}; },
        [](uint64_t m) { return std::max<uint64_t>(m, 1); }};
}

SetValuedReduction reduction_seeded_random(uint64_t seed) {
    return SetValuedReduction{"seeded-random-" + std::to_string(seed),
                              [seed](const BitString& x) {
                                  Rng rng(mix_key(seed, x.str() + "#f"));
                                  uint64_t count = 1 + rng.below(3);
                                  std::vector<BitString> out;
                                  out.reserve(count);
                                  uint64_t max_len = std::max<uint64_t>(x.length(), 1);
                                  for (uint64_t c = 0; c < count; ++c) {
                                      uint64_t len = rng.below(max_len + 1);
                                      std::string bits;
                                      for (uint64_t b = 0; b < len; ++b) {
                                          bits.push_back(rng.bit() ? '1' : '0');
                                      }
                                      out.emplace_back(bits);
                                  }
                                  return out;
                              },
                              [](uint64_t m) { return std::max<uint64_t>(m, 3); }};
}

}  // namespace galelearn::reductions
