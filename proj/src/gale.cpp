#include "galelearn/gale.hpp"

#include <cstdio>

#include "galelearn/errors.hpp"

namespace galelearn::gale {

GaleExponent::GaleExponent(Rat two_to_s) : two_to_s_(std::move(two_to_s)) {
    if (two_to_s_ <= 0) {
        throw ConfigError("2^s must be a positive rational");
    }
    s_float_ = rat_log2(two_to_s_);
}

size_t CapitalTrace::argmax() const {
    size_t best = 0;
    for (size_t i = 1; i < capitals.size(); ++i) {
        if (capitals[i] > capitals[best]) best = i;
    }
    return best;
}

std::string CapitalTrace::to_csv() const {
    std::string out =
        "prefix_length,capital_log2,capital_num,capital_den,bet_direction,learner_predicted,"
        "mistake_flag\n";
    char buf[64];
    for (size_t i = 0; i < capitals.size(); ++i) {
        const Rat& v = capitals[i];
        if (v > 0) {
            std::snprintf(buf, sizeof buf, "%.12g", rat_log2(v));
        } else {
            std::snprintf(buf, sizeof buf, "-inf");
        }
        out += std::to_string(i);
        out += ',';
        out += buf;
        out += ',';
        out += v.get_num().get_str();
        out += ',';
        out += v.get_den().get_str();
        out += ',';
        if (i < notes.size()) {
            const PositionNote& n = notes[i];
            out += n.bet_bit < 0 ? "-" : std::to_string(n.bet_bit);
            out += ',';
            out += n.learner_driven ? '1' : '0';
            out += ',';
            out += n.mistake ? '1' : '0';
        } else {
            out += "-,0,0";
        }
        out += '\n';
    }
    return out;
}

bool verify_gale_condition(const SGale& d, const BitString& w) {
    Rat left = d.value(w.append(0)) + d.value(w.append(1));
    Rat right = d.value(w) * d.exponent.two_to_s();
    return left == right;
}

namespace {

bool verify_tree_rec(const SGale& d, const BitString& w, const Rat& value_at_w, uint64_t depth) {
    Rat v0 = d.value(w.append(0));
    Rat v1 = d.value(w.append(1));
    if (v0 + v1 != value_at_w * d.exponent.two_to_s()) return false;
    if (depth == 0) return true;
    return verify_tree_rec(d, w.append(0), v0, depth - 1) &&
           verify_tree_rec(d, w.append(1), v1, depth - 1);
}

}  // namespace

bool verify_gale_tree(const SGale& d, uint64_t depth) {
    BitString root;
    return verify_tree_rec(d, root, d.value(root), depth);
}

bool verify_gale_along(const SGale& d, const BitString& bits) {
    BitString w;
    Rat v = d.value(w);
    for (size_t i = 0; i <= bits.length(); ++i) {
        Rat v0 = d.value(w.append(0));
        Rat v1 = d.value(w.append(1));
        if (v0 + v1 != v * d.exponent.two_to_s()) return false;
        if (i == bits.length()) break;
        int b = bits.bit(i);
        w = w.append(b);
        v = b ? v1 : v0;
    }
    return true;
}

SGale flat_gale(const GaleExponent& exponent) {
    Rat step = exponent.two_to_s() / 2;
    return SGale{exponent, [step](const BitString& w) {
                     return rat_pow(step, static_cast<long>(w.length()));
                 }};
}

SGale scale_gale(const SGale& d, const Rat& c) {
    if (c <= 0) {
        throw ConfigError("scale factor must be positive");
    }
    auto inner = d.value;
    return SGale{d.exponent, [inner, c](const BitString& w) -> Rat { return c * inner(w); }};
}

CapitalTrace evaluate_trace(const SGale& d, const BitString& bits) {
    CapitalTrace trace;
    trace.capitals.reserve(bits.length() + 1);
    trace.notes.resize(bits.length());
    BitString w;
    trace.capitals.push_back(d.value(w));
    for (size_t i = 0; i < bits.length(); ++i) {
        w = w.append(bits.bit(i));
        trace.capitals.push_back(d.value(w));
    }
    return trace;
}

Rat combine_and_approximate(const CombinedGale& c, const BitString& w, uint64_t r) {
    uint64_t truncation = w.length() + r;
    if (c.exponent.two_to_s() > 2) {
        throw PrecisionError("truncation bound requires s <= 1");
    }
    // Establish that every omitted member is <= 1 at w. Out-of-range members
    // are identically zero; in-range omitted members must still be in their
    // flat phase. Horizons are nondecreasing, so for an unbounded family the
    // first omitted member's horizon certifies the rest.
    auto check_omitted = [&](uint64_t n) {
        std::optional<uint64_t> horizon = c.flat_horizon(n);
        if (horizon && w.length() >= *horizon) {
            throw PrecisionError("omitted member " + std::to_string(n) +
                                 " is past its flat horizon; truncation unsound");
        }
    };
    if (c.max_member == std::numeric_limits<uint64_t>::max()) {
        check_omitted(truncation + 1);
    } else {
        for (uint64_t n = truncation + 1; n <= c.max_member; ++n) check_omitted(n);
    }

    Rat sum(0);
    Rat weight(1, 2);
    uint64_t last = std::min(truncation, c.max_member);
    for (uint64_t n = 1; n <= last; ++n) {
        sum += weight * c.member_value(n, w);
        weight /= 2;
    }
    return sum;
}

}  // namespace galelearn::gale
