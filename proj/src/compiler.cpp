#include "galelearn/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "galelearn/errors.hpp"
#include "galelearn/oracle.hpp"

namespace galelearn::compiler {

uint64_t flat_prefix_length(uint64_t n) {
    if (n > 62) {
        throw ResourceError("flat_prefix_length: n too large");
    }
    mpz_class power = mpz_class(1) << static_cast<unsigned>(n);
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), power.get_mpz_t());
    return root.get_ui();
}

CompilerParams CompilerParams::make(const gale::GaleExponent& exponent, const Rat& epsilon,
                                    uint64_t n, uint64_t c) {
    if (epsilon <= 0 || epsilon > Rat(1, 2)) {
        throw ConfigError("epsilon must be in (0, 1/2]");
    }
    double s = exponent.s();
    double loss_rate = -std::log2(1.0 - rat_double(epsilon));  // log2(1/(1-eps))
    if (!(loss_rate < s)) {
        throw ConfigError("epsilon too large: log2(1/(1-eps)) must be below s");
    }
    if (n < 1) {
        throw ConfigError("compiled gales need n >= 1");
    }
    uint64_t N = (uint64_t{1} << (n + 1)) - 1;
    uint64_t N0 = flat_prefix_length(n);
    return CompilerParams{exponent, epsilon, c, n, N, N0};
}

double CompilerParams::delta() const {
    double loss_rate = -std::log2(1.0 - rat_double(epsilon));
    return (exponent.s() - loss_rate) / 2.0;
}

Rat choose_epsilon(const gale::GaleExponent& exponent) {
    double s = exponent.s();
    Rat candidate(1, 2);
    for (int j = 1; j <= 20; ++j) {
        double loss_rate = -std::log2(1.0 - rat_double(candidate));
        if (loss_rate <= s - 0.01) return candidate;
        candidate /= 2;
    }
    throw ConfigError("no power-of-two epsilon down to 2^-20 fits this exponent; s too small");
}

// Shared state of one compiled d_n: the betting factors and the example
// table for positions N0..N-1, materialized on first phase-2 evaluation.
struct CompiledGale::Impl {
    CompilerParams params;
    LearnerFactory factory;
    std::function<learn::SparseExample(uint64_t, uint64_t)> example_fn;
    Rat flat_step;  // 2^{s-1}
    Rat gain;       // 2^s (1 - eps)
    Rat loss;       // 2^s eps

    mutable std::once_flag table_once;
    mutable std::vector<learn::SparseExample> table;  // index i - N0

    Impl(CompilerParams p, LearnerFactory f,
         std::function<learn::SparseExample(uint64_t, uint64_t)> examples)
        : params(std::move(p)), factory(std::move(f)), example_fn(std::move(examples)) {
        const Rat& two_s = params.exponent.two_to_s();
        flat_step = two_s / 2;
        gain = two_s * (Rat(1) - params.epsilon);
        loss = two_s * params.epsilon;
    }

    const learn::SparseExample& example_at(uint64_t i) const {
        std::call_once(table_once, [this] {
            table.reserve(params.N - params.N0);
            for (uint64_t j = params.N0; j < params.N; ++j) {
                table.push_back(example_fn(params.n, j));
            }
        });
        return table[i - params.N0];
    }

    Rat value(const BitString& w) const {
        uint64_t len = w.length();
        uint64_t flat = std::min<uint64_t>(len, params.N0);
        Rat v = rat_pow(flat_step, static_cast<long>(flat));
        if (len > params.N0) {
            std::unique_ptr<learn::OnlineLearner> learner = factory(params.n);
            uint64_t bet_end = std::min<uint64_t>(len, params.N);
            for (uint64_t i = params.N0; i < bet_end; ++i) {
                const learn::SparseExample& ex = example_at(i);
                bool predicted = learner->predict(ex);
                bool label = w.bit(i) == 1;
                v *= predicted == label ? gain : loss;
                learner->observe(ex, label);
            }
            if (len > params.N) {
                v *= rat_pow(flat_step, static_cast<long>(len - params.N));
            }
        }
        return v;
    }
};

CompiledGale compile_gale(const ConceptReduction& reduction, LearnerFactory factory,
                          const CompilerParams& params) {
    if (params.n > seqcore::kDefaultEnumerationCap) {
        throw ResourceError("compile_gale: n exceeds the desk-scale cap");
    }
    // Compiling at a length outside good_lengths is allowed: the gale is
    // still exact, only the capital guarantee is void. Callers check J.
    auto impl = std::make_shared<CompiledGale::Impl>(params, std::move(factory), reduction.example);
    CompiledGale out(params,
                     gale::SGale{params.exponent,
                                 [impl](const BitString& w) { return impl->value(w); }},
                     impl);
    return out;
}

CompiledGale::RunOutput CompiledGale::traced_run(const BitString& bits) const {
    const Impl& im = *impl_;
    RunOutput out;
    out.trace.capitals.reserve(bits.length() + 1);
    out.trace.notes.reserve(bits.length());
    Rat v(1);
    out.trace.capitals.push_back(v);
    std::unique_ptr<learn::OnlineLearner> learner;
    for (uint64_t i = 0; i < bits.length(); ++i) {
        bool actual = bits.bit(i) == 1;
        gale::PositionNote note;
        if (i < im.params.N0 || i >= im.params.N) {
            v *= im.flat_step;
        } else {
            if (!learner) learner = im.factory(im.params.n);
            const learn::SparseExample& ex = im.example_at(i);
            bool predicted = learner->predict(ex);
            bool mistake = predicted != actual;
            v *= mistake ? im.loss : im.gain;
            learner->observe(ex, actual);
            note.bet_bit = predicted ? 1 : 0;
            note.learner_driven = true;
            note.mistake = mistake;
            out.log.records.push_back(learn::MistakeRecord{i, ex.popcount(), predicted, actual,
                                                           learner->mistakes()});
        }
        out.trace.notes.push_back(note);
        out.trace.capitals.push_back(v);
    }
    out.mistake_count = learner ? learner->mistakes() : 0;
    return out;
}

Rat capital_closed_form(uint64_t mistakes, const CompilerParams& params) {
    uint64_t bets = params.N - params.N0;
    if (mistakes > bets) {
        throw ConfigError("mistake count exceeds number of bets");
    }
    const Rat& two_s = params.exponent.two_to_s();
    Rat out = rat_pow(two_s, static_cast<long>(bets));
    out *= rat_pow(Rat(1) - params.epsilon, static_cast<long>(bets - mistakes));
    out *= rat_pow(params.epsilon, static_cast<long>(mistakes));
    out *= rat_pow(two_s / 2, static_cast<long>(params.N0));
    return out;
}

bool capital_identity_check(const gale::CapitalTrace& trace, uint64_t mistakes,
                            const CompilerParams& params) {
    if (trace.capitals.size() <= params.N) {
        throw ConfigError("trace too short for the capital identity (needs length N)");
    }
    return trace.capitals[params.N] == capital_closed_form(mistakes, params);
}

GrowthCertificate growth_certificate(const CompilerParams& params, uint64_t mistakes,
                                     double final_capital_log2) {
    double s = params.exponent.s();
    double eps = rat_double(params.epsilon);
    double loss_rate = -std::log2(1.0 - eps);            // log2(1/(1-eps))
    double mistake_rate = std::log2((1.0 - eps) / eps);  // log2((1-eps)/eps)
    double N = static_cast<double>(params.N);
    GrowthCertificate cert;
    cert.delta = params.delta();
    cert.exponent_lower_bound =
        s * N - (N * loss_rate + static_cast<double>(mistakes) * mistake_rate) -
        static_cast<double>(params.N0);
    cert.lower_bound_holds = final_capital_log2 >= cert.exponent_lower_bound - 1e-6;
    cert.meets_delta_rate = final_capital_log2 >= cert.delta * N;
    return cert;
}

gale::CombinedGale compile_family(const ConceptReduction& reduction, LearnerFactory factory,
                                  const gale::GaleExponent& exponent, const Rat& epsilon,
                                  const std::vector<uint64_t>& n_range) {
    auto members = std::make_shared<std::map<uint64_t, CompiledGale>>();
    uint64_t max_member = 0;
    for (uint64_t n : n_range) {
        if (n < 1) {
            throw ConfigError("family members need n >= 1");
        }
        CompilerParams params = CompilerParams::make(exponent, epsilon, n);
        members->emplace(n, compile_gale(reduction, factory, params));
        max_member = std::max(max_member, n);
    }
    gale::CombinedGale combined{exponent};
    combined.max_member = max_member;
    combined.member_value = [members](uint64_t n, const BitString& w) {
        auto it = members->find(n);
        return it == members->end() ? Rat(0) : it->second.as_gale().value(w);
    };
    combined.flat_horizon = [members](uint64_t n) -> std::optional<uint64_t> {
        auto it = members->find(n);
        if (it == members->end()) return std::nullopt;  // zero member
        // Flat values (2^{s-1})^{|w|} stay <= 1 through length N0 for s <= 1.
        return it->second.params().N0 + 1;
    };
    return combined;
}

// Strong mode: per-length blocks of the characteristic sequence. Block n
// spans global positions 2^n - 1 .. 2^{n+1} - 2.
struct CompiledStrongGale::Impl {
    gale::GaleExponent exponent;
    Rat epsilon;
    LearnerFactory factory;
    std::function<learn::SparseExample(uint64_t, uint64_t)> example_fn;
    std::set<uint64_t> covered;
    Rat flat_step, gain, loss;

    mutable std::mutex table_mutex;
    mutable std::map<uint64_t, std::vector<learn::SparseExample>> tables;  // per block n

    Impl(gale::GaleExponent exp, Rat eps, LearnerFactory f,
         std::function<learn::SparseExample(uint64_t, uint64_t)> examples,
         std::set<uint64_t> blocks)
        : exponent(std::move(exp)),
          epsilon(std::move(eps)),
          factory(std::move(f)),
          example_fn(std::move(examples)),
          covered(std::move(blocks)) {
        const Rat& two_s = exponent.two_to_s();
        flat_step = two_s / 2;
        gain = two_s * (Rat(1) - epsilon);
        loss = two_s * epsilon;
    }

    static uint64_t block_of(uint64_t position) {
        uint64_t v = position + 1;
        uint64_t n = 0;
        while (v >>= 1) ++n;
        return n;
    }

    const learn::SparseExample& example_at(uint64_t n, uint64_t i) const {
        std::scoped_lock lock(table_mutex);
        auto [it, fresh] = tables.try_emplace(n);
        if (fresh) {
            uint64_t start = (uint64_t{1} << n) - 1;
            uint64_t size = uint64_t{1} << n;
            uint64_t flat = std::min(flat_prefix_length(n), size);
            it->second.reserve(size - flat);
            for (uint64_t j = start + flat; j < start + size; ++j) {
                it->second.push_back(example_fn(n, j));
            }
        }
        uint64_t start = (uint64_t{1} << n) - 1;
        uint64_t flat = std::min(flat_prefix_length(n), uint64_t{1} << n);
        return it->second[i - start - flat];
    }

    template <typename PerPosition>
    Rat run(const BitString& w, PerPosition&& hook) const {
        Rat v(1);
        std::unique_ptr<learn::OnlineLearner> learner;
        uint64_t learner_block = 0;
        for (uint64_t i = 0; i < w.length(); ++i) {
            uint64_t n = block_of(i);
            uint64_t start = (uint64_t{1} << n) - 1;
            uint64_t flat = std::min(flat_prefix_length(n), uint64_t{1} << n);
            bool actual = w.bit(i) == 1;
            if (covered.count(n) == 0 || i < start + flat) {
                v *= flat_step;
                hook(i, n, false, false, false, v);
                continue;
            }
            if (!learner || learner_block != n) {
                learner = factory(n);
                learner_block = n;
            }
            const learn::SparseExample& ex = example_at(n, i);
            bool predicted = learner->predict(ex);
            bool mistake = predicted != actual;
            v *= mistake ? loss : gain;
            learner->observe(ex, actual);
            hook(i, n, true, predicted, mistake, v);
        }
        return v;
    }
};

CompiledStrongGale compile_strong(const ConceptReduction& reduction, LearnerFactory factory,
                                  const gale::GaleExponent& exponent, const Rat& epsilon,
                                  const std::vector<uint64_t>& n_range) {
    if (reduction.mode != ConceptReduction::Mode::Strong) {
        throw ConfigError("compile_strong requires a strong-mode reduction");
    }
    if (epsilon <= 0 || epsilon > Rat(1, 2)) {
        throw ConfigError("epsilon must be in (0, 1/2]");
    }
    double loss_rate = -std::log2(1.0 - rat_double(epsilon));
    if (!(loss_rate < exponent.s())) {
        throw ConfigError("epsilon too large: log2(1/(1-eps)) must be below s");
    }
    std::set<uint64_t> covered(n_range.begin(), n_range.end());
    for (uint64_t n : covered) {
        if (n > seqcore::kDefaultEnumerationCap) {
            throw ResourceError("compile_strong: block length exceeds the desk-scale cap");
        }
    }
    auto impl = std::make_shared<CompiledStrongGale::Impl>(exponent, epsilon, std::move(factory),
                                                           reduction.example, std::move(covered));
    std::vector<uint64_t> covered_list(impl->covered.begin(), impl->covered.end());
    gale::SGale g{exponent,
                  [impl](const BitString& w) { return impl->run(w, [](auto&&...) {}); }};
    return CompiledStrongGale(std::move(g), std::move(covered_list), impl);
}

CompiledStrongGale::RunOutput CompiledStrongGale::traced_run(const BitString& bits) const {
    RunOutput out;
    out.trace.capitals.reserve(bits.length() + 1);
    out.trace.notes.reserve(bits.length());
    out.trace.capitals.push_back(Rat(1));
    std::map<uint64_t, BlockStat> stats;
    impl_->run(bits, [&](uint64_t /*i*/, uint64_t n, bool driven, bool predicted, bool mistake,
                         const Rat& v) {
        gale::PositionNote note;
        if (driven) {
            note.bet_bit = predicted ? 1 : 0;
            note.learner_driven = true;
            note.mistake = mistake;
            BlockStat& stat = stats.try_emplace(n, BlockStat{n, 0, 0}).first->second;
            ++stat.bets;
            if (mistake) ++stat.mistakes;
        } else {
            ++out.flat_positions;
        }
        out.trace.notes.push_back(note);
        out.trace.capitals.push_back(v);
    });
    for (auto& [n, stat] : stats) out.blocks.push_back(stat);
    return out;
}

Rat strong_closed_form(const CompiledStrongGale::RunOutput& run,
                       const gale::GaleExponent& exponent, const Rat& epsilon) {
    const Rat& two_s = exponent.two_to_s();
    Rat out = rat_pow(two_s / 2, static_cast<long>(run.flat_positions));
    Rat gain = two_s * (Rat(1) - epsilon);
    Rat loss = two_s * epsilon;
    for (const auto& block : run.blocks) {
        out *= rat_pow(gain, static_cast<long>(block.bets - block.mistakes));
        out *= rat_pow(loss, static_cast<long>(block.mistakes));
    }
    return out;
}

}  // namespace galelearn::compiler
