#include "galelearn/learner.hpp"

#include <algorithm>

#include "galelearn/errors.hpp"

namespace galelearn::learn {

SparseExample SparseExample::from_positions(uint64_t universe, std::vector<uint64_t> positions) {
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    if (!positions.empty() && positions.back() >= universe) {
        throw ContractError("example position exceeds universe size");
    }
    return SparseExample{universe, std::move(positions)};
}

bool MonotoneDisjunction::evaluate(const SparseExample& x) const {
    // Both sides sorted; march through the shorter one.
    auto it = variables.begin();
    for (uint64_t pos : x.ones) {
        while (it != variables.end() && *it < pos) ++it;
        if (it == variables.end()) return false;
        if (*it == pos) return true;
    }
    return false;
}

bool SubsetConcept::contains(const std::set<BitString>& Q) const {
    for (const auto& q : Q) {
        if (X.count(q) == 0) return false;
    }
    return true;
}

WinnowLearner::WinnowLearner(uint64_t universe_size, Rat alpha, Rat theta)
    : universe_(universe_size), alpha_(std::move(alpha)), theta_(std::move(theta)) {
    if (alpha_ <= 1) {
        throw ConfigError("Winnow requires alpha > 1");
    }
}

WinnowLearner WinnowLearner::standard(uint64_t universe_size) {
    return WinnowLearner(universe_size, Rat(2), Rat(universe_size) / 2);
}

void WinnowLearner::require_universe(const SparseExample& x) const {
    if (x.universe_size != universe_) {
        throw ContractError("example universe " + std::to_string(x.universe_size) +
                            " does not match learner universe " + std::to_string(universe_));
    }
}

Rat WinnowLearner::weight(uint64_t index) const {
    auto it = adjusted_.find(index);
    return it == adjusted_.end() ? Rat(1) : it->second;
}

Rat WinnowLearner::weighted_sum(const SparseExample& x) const {
    uint64_t defaults = 0;
    Rat sum(0);
    for (uint64_t pos : x.ones) {
        auto it = adjusted_.find(pos);
        if (it == adjusted_.end()) {
            ++defaults;
        } else {
            sum += it->second;
        }
    }
    sum += Rat(defaults);
    return sum;
}

bool WinnowLearner::predict(const SparseExample& x) const {
    require_universe(x);
    return weighted_sum(x) > theta_;
}

ObserveOutcome WinnowLearner::observe(const SparseExample& x, bool truth) {
    require_universe(x);
    bool positive = predict(x);
    ObserveOutcome out{positive, positive != truth};
    if (!out.mistake) return out;
    ++mistakes_;
    if (positive) {
        // False positive: these variables cannot be in the disjunction.
        for (uint64_t pos : x.ones) adjusted_[pos] = Rat(0);
    } else {
        // False negative: promote.
        for (uint64_t pos : x.ones) {
            auto it = adjusted_.find(pos);
            if (it == adjusted_.end()) {
                adjusted_.emplace(pos, alpha_);
            } else {
                it->second *= alpha_;
            }
        }
    }
    return out;
}

std::unique_ptr<OnlineLearner> WinnowLearner::clone() const {
    return std::make_unique<WinnowLearner>(*this);
}

bool UnionLearner::predict(const SparseExample& x) const {
    if (x.universe_size != universe_) {
        throw ContractError("example universe does not match learner universe");
    }
    for (uint64_t pos : x.ones) {
        if (hypothesis_.count(pos) == 0) return false;
    }
    return true;
}

ObserveOutcome UnionLearner::observe(const SparseExample& x, bool truth) {
    bool positive = predict(x);
    ObserveOutcome out{positive, positive != truth};
    if (out.mistake) {
        ++mistakes_;
        if (truth) {
            hypothesis_.insert(x.ones.begin(), x.ones.end());
        }
    }
    return out;
}

std::unique_ptr<OnlineLearner> UnionLearner::clone() const {
    return std::make_unique<UnionLearner>(*this);
}

bool union_predict(const UnionLearnerState& state, const std::set<BitString>& Q) {
    for (const auto& q : Q) {
        if (state.hypothesis.count(q) == 0) return false;
    }
    return true;
}

ObserveOutcome union_observe(UnionLearnerState& state, const std::set<BitString>& Q, bool truth) {
    bool positive = union_predict(state, Q);
    ObserveOutcome out{positive, positive != truth};
    if (out.mistake) {
        ++state.mistakes;
        if (truth) {
            state.hypothesis.insert(Q.begin(), Q.end());
        }
    }
    return out;
}

uint64_t winnow_bound(uint64_t k, uint64_t N) {
    if (N < 2) {
        throw ConfigError("winnow_bound requires N >= 2");
    }
    if (k == 0) return 2;
    // ceil(2 k log2 N) = ceil(log2(N^{2k})), exact via bignum.
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(N),
                  static_cast<unsigned long>(2 * k));
    return ceil_log2_uint(power) + 2;
}

std::string MistakeLog::to_csv() const {
    std::string out = "example_id,popcount,prediction,truth,cumulative_mistakes\n";
    for (const auto& r : records) {
        out += std::to_string(r.example_id);
        out += ',';
        out += std::to_string(r.popcount);
        out += ',';
        out += r.predicted ? '1' : '0';
        out += ',';
        out += r.truth ? '1' : '0';
        out += ',';
        out += std::to_string(r.cumulative_mistakes);
        out += '\n';
    }
    return out;
}

MistakeLog teach(OnlineLearner& learner, const LabelFn& truth,
                 const std::vector<SparseExample>& examples) {
    MistakeLog log;
    log.records.reserve(examples.size());
    uint64_t cumulative = 0;  // mistakes within this log only
    for (size_t i = 0; i < examples.size(); ++i) {
        bool label = truth(examples[i]);
        ObserveOutcome out = learner.observe(examples[i], label);
        if (out.mistake) ++cumulative;
        log.records.push_back(MistakeRecord{i, examples[i].popcount(), out.predicted_positive,
                                            label, cumulative});
    }
    return log;
}

SparseExample random_example(const MonotoneDisjunction& target, Rng& rng, uint64_t max_popcount) {
    uint64_t N = target.universe_size;
    uint64_t cap = std::min<uint64_t>(max_popcount, N);
    uint64_t count = cap == 0 ? 0 : rng.below(cap + 1);
    std::vector<uint64_t> positions = rng.sample_distinct(count, N);
    uint64_t style = rng.below(4);
    if (style == 0 && !target.variables.empty()) {
        // Force a hit on the target.
        positions.push_back(target.variables[rng.below(target.variables.size())]);
    } else if (style == 1) {
        // Force a miss: strip all target variables.
        std::vector<uint64_t> filtered;
        for (uint64_t p : positions) {
            if (!std::binary_search(target.variables.begin(), target.variables.end(), p)) {
                filtered.push_back(p);
            }
        }
        positions = std::move(filtered);
    }
    return SparseExample::from_positions(N, std::move(positions));
}

std::vector<SparseExample> adversarial_sequence(const MonotoneDisjunction& target,
                                                const OnlineLearner& prototype, uint64_t budget,
                                                Rng& rng, uint64_t pool_size) {
    std::vector<SparseExample> sequence;
    sequence.reserve(budget);
    std::unique_ptr<OnlineLearner> sim = prototype.clone();
    for (uint64_t step = 0; step < budget; ++step) {
        SparseExample chosen = random_example(target, rng);
        for (uint64_t c = 0; c < pool_size; ++c) {
            SparseExample candidate = random_example(target, rng);
            if (sim->predict(candidate) != target.evaluate(candidate)) {
                chosen = std::move(candidate);
                break;
            }
        }
        sim->observe(chosen, target.evaluate(chosen));
        sequence.push_back(std::move(chosen));
    }
    return sequence;
}

}  // namespace galelearn::learn
