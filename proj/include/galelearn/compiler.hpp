#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "galelearn/gale.hpp"
#include "galelearn/learner.hpp"
#include "galelearn/rat.hpp"

namespace galelearn::compiler {

using seqcore::BitString;

// Parameters of one compiled gale d_n. The whole construction bets flat for
// the first N0 positions, lets the learner's predictions drive positions
// N0..N-1, and returns to flat splits past N.
struct CompilerParams {
    gale::GaleExponent exponent;
    Rat epsilon;   // betting epsilon in (0, 1/2]
    uint64_t c;    // time-exponent bookkeeping, reporting only
    uint64_t n;    // target length
    uint64_t N;    // 2^{n+1} - 1, the prefix covering {0,1}^{<=n}
    uint64_t N0;   // floor(2^{n/2})

    // Validates epsilon in (0, 1/2], log2(1/(1-eps)) < s, and n >= 1.
    static CompilerParams make(const gale::GaleExponent& exponent, const Rat& epsilon, uint64_t n,
                               uint64_t c = 1);

    // The reported growth-rate certificate: half the betting slack
    // s - log2(1/(1-eps)).
    double delta() const;
};

// Largest epsilon in {1/2, 1/4, 1/8, ...} with log2(1/(1-eps)) <= s - 0.01.
Rat choose_epsilon(const gale::GaleExponent& exponent);

// The target concept at one length: labels plus its literal count.
struct TargetConcept {
    std::function<bool(const learn::SparseExample&)> label;
    uint64_t size = 0;  // |V| for disjunctions, |X| for subset concepts
};

struct ConceptClassInfo {
    std::string kind;
    double literal_budget_log2 = 0;  // target is in class iff log2(size) <= this
};

// A reduction-to-concepts family: everything the compiler needs to view the
// characteristic sequence as labeled examples. example(n, i) is the example
// generated from the i-th string of the standard enumeration.
struct ConceptReduction {
    enum class Mode { Weak, Strong };

    Mode mode = Mode::Weak;
    std::function<uint64_t(uint64_t n)> universe_size;
    std::function<learn::SparseExample(uint64_t n, uint64_t index)> example;
    std::function<std::optional<TargetConcept>(uint64_t n)> target;
    std::function<ConceptClassInfo(uint64_t n)> concept_class;
    std::set<uint64_t> good_lengths;  // J: lengths where the target is in class
};

using LearnerFactory = std::function<std::unique_ptr<learn::OnlineLearner>(uint64_t n)>;

// One compiled s-gale d_n. The value function replays the learner from
// scratch on the queried prefix, so d_n is a pure function of w; traced_run
// is the single-pass equivalent along one sequence, with betting
// annotations and the learner's mistake log.
class CompiledGale {
public:
    struct RunOutput {
        gale::CapitalTrace trace;
        learn::MistakeLog log;     // one record per learner-driven position
        uint64_t mistake_count = 0;  // m_n
    };

    const CompilerParams& params() const { return params_; }
    const gale::SGale& as_gale() const { return gale_; }

    RunOutput traced_run(const BitString& bits) const;

    struct Impl;

private:
    friend CompiledGale compile_gale(const ConceptReduction&, LearnerFactory,
                                     const CompilerParams&);
    CompiledGale(CompilerParams params, gale::SGale g, std::shared_ptr<const Impl> impl)
        : params_(std::move(params)), gale_(std::move(g)), impl_(std::move(impl)) {}

    CompilerParams params_;
    gale::SGale gale_;
    std::shared_ptr<const Impl> impl_;
};

// The Theorem 3.1 construction for one length n. The learner sees examples
// for positions N0..N-1 only, labeled by the bits of w; its prediction at
// position i uses labels of positions N0..i-1, never its own position.
CompiledGale compile_gale(const ConceptReduction& reduction, LearnerFactory factory,
                          const CompilerParams& params);

// 2^{s(N-N0)} (1-eps)^{N-N0-m} eps^m 2^{(s-1)N0}, exact.
Rat capital_closed_form(uint64_t mistakes, const CompilerParams& params);

// Exact equality of the trace's capital at prefix length N with the closed
// form. A mismatch indicates an implementation bug, never rounding.
bool capital_identity_check(const gale::CapitalTrace& trace, uint64_t mistakes,
                            const CompilerParams& params);

struct GrowthCertificate {
    double delta = 0;
    double exponent_lower_bound = 0;  // sN - (N log2(1/(1-eps)) + m log2((1-eps)/eps)) - N0
    bool lower_bound_holds = false;   // final log2 capital >= bound - 1e-6
    bool meets_delta_rate = false;    // final log2 capital >= delta * N
};

GrowthCertificate growth_certificate(const CompilerParams& params, uint64_t mistakes,
                                     double final_capital_log2);

// d = sum_n 2^{-n} d_n over the given lengths; members outside the range are
// identically zero, so truncation error bounds stay finite-checkable.
gale::CombinedGale compile_family(const ConceptReduction& reduction, LearnerFactory factory,
                                  const gale::GaleExponent& exponent, const Rat& epsilon,
                                  const std::vector<uint64_t>& n_range);

// The strong-mode gale: one s-gale over the whole characteristic sequence.
// Within each covered per-length block (the positions of {0,1}^n) a fresh
// learner drives the bets after a flat N0(n)-prefix; uncovered positions
// bet flat. Capital compounds across blocks.
class CompiledStrongGale {
public:
    struct BlockStat {
        uint64_t n = 0;
        uint64_t bets = 0;      // learner-driven positions consumed
        uint64_t mistakes = 0;  // wrong predictions within the block
    };
    struct RunOutput {
        gale::CapitalTrace trace;
        std::vector<BlockStat> blocks;
        uint64_t flat_positions = 0;  // all even-split positions consumed
    };

    const gale::SGale& as_gale() const { return gale_; }
    const std::vector<uint64_t>& covered_lengths() const { return covered_; }

    RunOutput traced_run(const BitString& bits) const;

    struct Impl;

private:
    friend CompiledStrongGale compile_strong(const ConceptReduction&, LearnerFactory,
                                             const gale::GaleExponent&, const Rat&,
                                             const std::vector<uint64_t>&);
    CompiledStrongGale(gale::SGale g, std::vector<uint64_t> covered,
                       std::shared_ptr<const Impl> impl)
        : gale_(std::move(g)), covered_(std::move(covered)), impl_(std::move(impl)) {}

    gale::SGale gale_;
    std::vector<uint64_t> covered_;
    std::shared_ptr<const Impl> impl_;
};

CompiledStrongGale compile_strong(const ConceptReduction& reduction, LearnerFactory factory,
                                  const gale::GaleExponent& exponent, const Rat& epsilon,
                                  const std::vector<uint64_t>& n_range);

// Product of per-block closed forms plus the flat factor; equals the final
// capital of a strong traced run exactly.
Rat strong_closed_form(const CompiledStrongGale::RunOutput& run,
                       const gale::GaleExponent& exponent, const Rat& epsilon);

// floor(2^{n/2}) via exact integer square root.
uint64_t flat_prefix_length(uint64_t n);

}  // namespace galelearn::compiler
