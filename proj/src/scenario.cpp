#include <algorithm>
#include <cmath>

#include "galelearn/errors.hpp"
#include "galelearn/reductions.hpp"
#include "galelearn/rng.hpp"

namespace galelearn::reductions {

OracleMachine machine_oracle_ignoring() {
    return OracleMachine{
        "oracle-ignoring",
        [](const BitString& x, const BitString&) {
            return MachineStep::decision(!x.empty() && x.bit(0) == 1);
        },
        [](uint64_t) { return uint64_t{1}; },
        [](uint64_t n) { return n; },
    };
}

OracleMachine machine_self_query() {
    return OracleMachine{
        "self-query",
        [](const BitString& x, const BitString& answers) {
            if (answers.empty()) return MachineStep::ask(x);
            return MachineStep::decision(answers.bit(0) == 1);
        },
        [](uint64_t) { return uint64_t{1}; },
        [](uint64_t n) { return n; },
    };
}

namespace {

BitString chain_query(const BitString& x, const BitString& answers) {
    // w_0 derives from x; each answer shifts itself into the next query, so
    // sibling branches always diverge in their leading bit.
    std::string bits = x.empty() ? "0" : x.str();
    for (size_t j = 0; j < answers.length(); ++j) {
        bits.pop_back();
        bits.insert(bits.begin(), answers.bit(j) ? '1' : '0');
    }
    return BitString(bits);
}

}  // namespace

OracleMachine machine_adaptive_chain(uint64_t q) {
    if (q < 1) {
        throw ConfigError("adaptive chain needs q >= 1");
    }
    return OracleMachine{
        "adaptive-chain-q" + std::to_string(q),
        [q](const BitString& x, const BitString& answers) {
            if (answers.length() >= q) {
                return MachineStep::decision(answers.bit(answers.length() - 1) == 1);
            }
            return MachineStep::ask(chain_query(x, answers));
        },
        [q](uint64_t) { return q; },
        [](uint64_t n) { return std::max<uint64_t>(n, 1); },
    };
}

OracleMachine machine_majority(uint64_t q) {
    if (q < 1) {
        throw ConfigError("majority machine needs q >= 1");
    }
    return OracleMachine{
        "majority-q" + std::to_string(q),
        [q](const BitString& x, const BitString& answers) {
            if (answers.length() >= q) {
                uint64_t yes = 0;
                for (size_t j = 0; j < answers.length(); ++j) yes += answers.bit(j);
                return MachineStep::decision(2 * yes > q);
            }
            // Nonadaptive: the j-th query is x with bit j (mod |x|) flipped.
            std::string bits = x.empty() ? "0" : x.str();
            size_t j = answers.length() % bits.size();
            bits[j] = bits[j] == '0' ? '1' : '0';
            return MachineStep::ask(BitString(bits));
        },
        [q](uint64_t) { return q; },
        [](uint64_t n) { return std::max<uint64_t>(n, 1); },
    };
}

OracleMachine machine_random_tree(uint64_t seed, uint64_t q) {
    if (q < 1) {
        throw ConfigError("random tree machine needs q >= 1");
    }
    return OracleMachine{
        "random-tree-" + std::to_string(seed) + "-q" + std::to_string(q),
        [seed, q](const BitString& x, const BitString& answers) {
            uint64_t h = mix_key(seed, x.str() + "|" + answers.str());
            if (answers.length() >= q) {
                return MachineStep::decision((h & 1) != 0);
            }
            // May decide early, but always asks at least one query so the
            // answer-path expansion stays faithful.
            if (!answers.empty() && h % 5 == 0) {
                return MachineStep::decision(((h >> 1) & 1) != 0);
            }
            uint64_t max_len = x.length() + 1;
            uint64_t len = (h >> 8) % (max_len + 1);
            std::string bits;
            uint64_t payload = h >> 16;
            for (uint64_t b = 0; b < len; ++b) {
                bits.push_back((payload >> (b % 48) & 1) ? '1' : '0');
            }
            return MachineStep::ask(BitString(bits));
        },
        [q](uint64_t) { return q; },
        [](uint64_t n) { return n + 1; },
    };
}

uint64_t SyntheticScenario::r_length_bound(uint64_t n) const {
    if (!machine) {
        throw ConfigError("r(n) is only defined for turing scenarios");
    }
    return 1 + machine->query_length_bound(n);
}

namespace {

LanguageOracle oracle_from_kind(const std::string& kind, uint64_t seed, uint64_t max_len) {
    if (kind == "tally") return LanguageOracle::tally();
    if (kind == "empty") return LanguageOracle::empty_set();
    if (kind == "full") return LanguageOracle::full_set();
    if (kind == "even") return LanguageOracle::even_length();
    if (kind == "random-rate") return LanguageOracle::seeded_random(seed, 1, 2);
    if (kind == "random-sparse") {
        // About n+1 members per length: polynomially sparse with census
        // bookkeeping, bounded at desk scale.
        return seqcore::random_with_counts("random-sparse-" + std::to_string(seed), seed, max_len,
                                           [](uint64_t n) { return n + 1; })
            .oracle;
    }
    throw ConfigError("unknown oracle kind: " + kind);
}

SetValuedReduction f_from_kind(const std::string& kind, uint64_t seed) {
    if (kind == "identity") return reduction_identity();
    if (kind == "zeros") return reduction_zeros();
    if (kind == "random") return reduction_seeded_random(seed);
    throw ConfigError("unknown reduction kind: " + kind);
}

OracleMachine machine_from_kind(const std::string& kind, uint64_t seed, uint64_t q) {
    if (kind == "random-tree") return machine_random_tree(seed, q);
    if (kind == "adaptive-chain") return machine_adaptive_chain(q);
    if (kind == "majority") return machine_majority(q);
    if (kind == "self-query") return machine_self_query();
    throw ConfigError("unknown machine kind: " + kind);
}

}  // namespace

SyntheticScenario synthesize_scenario(uint64_t seed, ScenarioKind kind,
                                      const ScenarioParams& params) {
    if (params.lengths.empty()) {
        throw ConfigError("scenario needs at least one length");
    }
    uint64_t max_len = *std::max_element(params.lengths.begin(), params.lengths.end());
    if (max_len > seqcore::kDefaultEnumerationCap) {
        throw ResourceError("scenario length exceeds the desk-scale cap");
    }

    if (kind == ScenarioKind::Disjunctive || kind == ScenarioKind::Conjunctive) {
        LanguageOracle S = oracle_from_kind(params.oracle_kind, mix_key(seed, "S"), max_len + 4);
        SetValuedReduction f = f_from_kind(params.f_kind, mix_key(seed, "f"));
        bool disjunctive = kind == ScenarioKind::Disjunctive;
        LanguageOracle reduced(
            disjunctive ? "disjunctive-image" : "conjunctive-image",
            [S, f, disjunctive](const BitString& x) {
                auto queries = apply_reduction(f, x);
                if (disjunctive) {
                    for (const auto& q : queries) {
                        if (S.contains(q)) return true;
                    }
                    return false;
                }
                for (const auto& q : queries) {
                    if (!S.contains(q)) return false;
                }
                return true;
            });
        SyntheticScenario scenario{seed, kind, params, S, std::move(reduced)};
        scenario.f = std::move(f);
        return scenario;
    }

    // Turing: S is a seeded pseudo-random set; U is the tally set; g sends
    // b.w to a designated tally string exactly when b.w lies in the disjoint
    // union S^c (+) S, and to designated non-members otherwise, so the
    // consistency invariant holds by construction (and is verified below).
    if (params.query_count < 1) {
        throw ConfigError("turing scenarios need q >= 1");
    }
    LanguageOracle S = LanguageOracle::seeded_random(mix_key(seed, "S"), 1, 2);
    LanguageOracle U = LanguageOracle::tally();
    LanguageOracle splus = seqcore::disjoint_union_oracle(S);
    uint64_t width = params.g_width;
    if (width < 1 || width > 2) {
        throw ConfigError("g_width must be 1 or 2");
    }
    SetValuedReduction g{
        "designated-singleton",
        [splus, width](const BitString& bw) {
            if (bw.empty()) {
                throw ContractError("g is defined on prefixed queries only");
            }
            uint64_t len = bw.length();
            std::vector<BitString> out;
            if (splus.contains(bw)) {
                out.push_back(BitString::zeros(len));  // the designated member of U
            } else {
                out.push_back(BitString("1").concat(BitString::zeros(len - 1)));
            }
            if (width == 2 && len >= 2) {
                // A decoy that is never in U.
                out.push_back(BitString("11").concat(BitString::zeros(len - 2)));
            }
            return out;
        },
        [](uint64_t m) { return std::max<uint64_t>(m, 2); }};

    OracleMachine machine =
        machine_from_kind(params.machine_kind, mix_key(seed, "M"), params.query_count);
    LanguageOracle reduced("turing-image", [machine, S](const BitString& x) {
        return brute_force_oracle_run(machine, S, x);
    });

    SyntheticScenario scenario{seed, kind, params, S, std::move(reduced)};
    scenario.machine = std::move(machine);
    scenario.g = std::move(g);
    scenario.U = std::move(U);

    // Exhaustive consistency check at desk lengths: g(bw) meets U exactly
    // when bw is in the disjoint union.
    uint64_t check_len = std::min<uint64_t>(scenario.r_length_bound(max_len), 9);
    for (uint64_t i = 1; i < (uint64_t{1} << (check_len + 1)) - 1; ++i) {
        BitString bw = seqcore::index_to_string(i);
        bool hits_u = false;
        for (const auto& u : apply_reduction(*scenario.g, bw)) {
            if (scenario.U->contains(u)) hits_u = true;
        }
        if (hits_u != splus.contains(bw)) {
            throw ContractError("synthesized g is inconsistent with S^c (+) S at " + bw.str());
        }
    }
    return scenario;
}

}  // namespace galelearn::reductions
