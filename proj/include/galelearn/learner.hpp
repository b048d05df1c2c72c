#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "galelearn/bitstring.hpp"
#include "galelearn/rat.hpp"
#include "galelearn/rng.hpp"

namespace galelearn::learn {

using seqcore::BitString;

// An example over a huge sparse universe: only the 1-positions are stored.
// Universes reach 2^{2n} positions, so prediction cost must scale with the
// example's popcount, never with the universe.
struct SparseExample {
    uint64_t universe_size = 0;
    std::vector<uint64_t> ones;  // strictly increasing, < universe_size

    static SparseExample from_positions(uint64_t universe, std::vector<uint64_t> positions);
    uint64_t popcount() const { return ones.size(); }
};

struct MonotoneDisjunction {
    uint64_t universe_size = 0;
    std::vector<uint64_t> variables;  // sorted

    bool evaluate(const SparseExample& x) const;  // true iff ones meet variables
    uint64_t literal_count() const { return variables.size(); }
};

// The section-4.2 concept P(X): a query set Q is a member iff Q is a subset
// of X. Universe elements are bit strings.
struct SubsetConcept {
    std::set<BitString> X;

    bool contains(const std::set<BitString>& Q) const;
};

struct ObserveOutcome {
    bool predicted_positive = false;
    bool mistake = false;
};

class OnlineLearner {
public:
    virtual ~OnlineLearner() = default;

    virtual bool predict(const SparseExample& x) const = 0;
    // Predicts internally, updates state per the learner's rule, counts the
    // mistake. Deterministic: replaying the same examples and labels yields
    // bit-identical state.
    virtual ObserveOutcome observe(const SparseExample& x, bool truth) = 0;
    virtual uint64_t mistakes() const = 0;
    virtual std::unique_ptr<OnlineLearner> clone() const = 0;
    virtual std::string name() const = 0;
};

// Littlestone's Winnow. Weights start at 1; a false positive zeroes the
// weights of the example's 1-positions, a false negative multiplies them by
// alpha. Prediction is positive iff the weighted sum strictly exceeds theta
// (exact rational comparison; a tie predicts negative). Only weights != 1
// are stored.
class WinnowLearner final : public OnlineLearner {
public:
    WinnowLearner(uint64_t universe_size, Rat alpha, Rat theta);

    // The certified setting: alpha = 2, theta = N/2.
    static WinnowLearner standard(uint64_t universe_size);

    bool predict(const SparseExample& x) const override;
    ObserveOutcome observe(const SparseExample& x, bool truth) override;
    uint64_t mistakes() const override { return mistakes_; }
    std::unique_ptr<OnlineLearner> clone() const override;
    std::string name() const override { return "winnow"; }

    uint64_t universe_size() const { return universe_; }
    const Rat& alpha() const { return alpha_; }
    const Rat& theta() const { return theta_; }
    Rat weight(uint64_t index) const;
    const std::map<uint64_t, Rat>& adjusted_weights() const { return adjusted_; }
    Rat weighted_sum(const SparseExample& x) const;

private:
    void require_universe(const SparseExample& x) const;

    uint64_t universe_;
    Rat alpha_;
    Rat theta_;
    std::map<uint64_t, Rat> adjusted_;  // absent index: weight exactly 1
    uint64_t mistakes_ = 0;
};

// The section-4.2 union learner over index universes: hypothesis H is the
// union of all positive examples seen; predict positive iff the example is
// a subset of H. Never errs on a negative example under consistent
// teaching and makes at most |X| mistakes total.
class UnionLearner final : public OnlineLearner {
public:
    explicit UnionLearner(uint64_t universe_size) : universe_(universe_size) {}

    bool predict(const SparseExample& x) const override;
    ObserveOutcome observe(const SparseExample& x, bool truth) override;
    uint64_t mistakes() const override { return mistakes_; }
    std::unique_ptr<OnlineLearner> clone() const override;
    std::string name() const override { return "union"; }

    const std::set<uint64_t>& hypothesis() const { return hypothesis_; }

private:
    uint64_t universe_;
    std::set<uint64_t> hypothesis_;
    uint64_t mistakes_ = 0;
};

// String-set flavor of the union learner, matching the concept universe of
// section 4.2 directly.
struct UnionLearnerState {
    std::set<BitString> hypothesis;
    uint64_t mistakes = 0;
};

bool union_predict(const UnionLearnerState& state, const std::set<BitString>& Q);
ObserveOutcome union_observe(UnionLearnerState& state, const std::set<BitString>& Q, bool truth);

// ceil(2 k log2 N) + 2: the certified Winnow mistake ceiling for monotone
// disjunctions with at most k literals over N variables (alpha = 2,
// theta = N/2). Exact integer arithmetic, no float rounding.
uint64_t winnow_bound(uint64_t k, uint64_t N);

struct MistakeRecord {
    uint64_t example_id = 0;
    uint64_t popcount = 0;
    bool predicted = false;
    bool truth = false;
    uint64_t cumulative_mistakes = 0;
};

struct MistakeLog {
    std::vector<MistakeRecord> records;

    uint64_t total_mistakes() const {
        return records.empty() ? 0 : records.back().cumulative_mistakes;
    }
    // Columns: example_id, popcount, prediction, truth, cumulative_mistakes.
    std::string to_csv() const;
};

using LabelFn = std::function<bool(const SparseExample&)>;

// Feeds the sequence to the learner with labels from the target; returns the
// full per-example log. Deterministic given learner state and inputs.
MistakeLog teach(OnlineLearner& learner, const LabelFn& truth,
                 const std::vector<SparseExample>& examples);

// Greedy adversary: at each step, simulates the learner-so-far and picks the
// first candidate from a seeded pool that it misclassifies (falls back to a
// random candidate when none is found). The mistake bound must hold against
// any sequence, so any pool is a fair stressor.
std::vector<SparseExample> adversarial_sequence(const MonotoneDisjunction& target,
                                                const OnlineLearner& prototype, uint64_t budget,
                                                Rng& rng, uint64_t pool_size = 256);

// A seeded candidate example, biased to hit or miss the target's variables
// about half the time.
SparseExample random_example(const MonotoneDisjunction& target, Rng& rng,
                             uint64_t max_popcount = 16);

}  // namespace galelearn::learn
