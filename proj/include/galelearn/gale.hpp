#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "galelearn/bitstring.hpp"
#include "galelearn/rat.hpp"

namespace galelearn::gale {

using seqcore::BitString;

// The betting handicap, carried as the exact rational 2^s so the gale
// condition d(w0) + d(w1) = 2^s d(w) is checkable with zero tolerance.
// s itself is generally irrational and appears only as a float for
// reporting and log-domain bounds.
class GaleExponent {
public:
    explicit GaleExponent(Rat two_to_s);

    static GaleExponent martingale() { return GaleExponent(Rat(2)); }

    const Rat& two_to_s() const { return two_to_s_; }
    double s() const { return s_float_; }

private:
    Rat two_to_s_;
    double s_float_;
};

// An s-gale as a pure evaluator: exact nonnegative capital per prefix.
struct SGale {
    GaleExponent exponent;
    std::function<Rat(const BitString&)> value;
};

// Per-position betting annotation for trace CSVs. bet_bit is the next-bit
// value the gale put the larger share on; -1 means an even split.
struct PositionNote {
    int bet_bit = -1;
    bool learner_driven = false;
    bool mistake = false;
};

struct CapitalTrace {
    std::vector<Rat> capitals;        // index = prefix length
    std::vector<PositionNote> notes;  // notes[i] annotates the bet on bit i

    const Rat& final_capital() const { return capitals.back(); }
    size_t argmax() const;
    const Rat& max_capital() const { return capitals[argmax()]; }

    // Columns: prefix_length, capital_log2, capital_num, capital_den,
    // bet_direction, learner_predicted, mistake_flag.
    std::string to_csv() const;
};

// Exact check of d(w0) + d(w1) = 2^s d(w) at one node.
bool verify_gale_condition(const SGale& d, const BitString& w);

// Exact check at every node of the complete binary tree to the given depth.
bool verify_gale_tree(const SGale& d, uint64_t depth);

// Exact check at every prefix of bits (each prefix is a node of the trace).
bool verify_gale_along(const SGale& d, const BitString& bits);

// d(w) = (2^s / 2)^{|w|}; the wait-and-bet-flat gale.
SGale flat_gale(const GaleExponent& exponent);

// Same gale with initial capital multiplied by c > 0.
SGale scale_gale(const SGale& d, const Rat& c);

// Exact capital at every prefix length 0..len(bits). Notes stay at their
// defaults; compiled gales produce annotated traces via their own one-pass
// runs, which must agree with this evaluator exactly.
CapitalTrace evaluate_trace(const SGale& d, const BitString& bits);

// d = sum_n 2^{-n} d_n over members with one shared exponent. Members above
// max_member are identically zero. flat_horizon(n) returns a length below
// which member n is guaranteed <= 1 (nullopt: bounded by 1 everywhere);
// horizons must be nondecreasing in n for truncation soundness.
struct CombinedGale {
    GaleExponent exponent;
    uint64_t max_member = std::numeric_limits<uint64_t>::max();
    std::function<Rat(uint64_t n, const BitString&)> member_value;  // n >= 1
    std::function<std::optional<uint64_t>(uint64_t n)> flat_horizon;
};

// Sum of the first |w| + r terms, exact. Within 2^{-r} of the full series
// whenever every omitted term is <= 1; throws PrecisionError when that
// bound cannot be established from the horizons (requires s <= 1).
Rat combine_and_approximate(const CombinedGale& c, const BitString& w, uint64_t r);

}  // namespace galelearn::gale
