#include <doctest.h>

#include "galelearn/errors.hpp"
#include "galelearn/gale.hpp"
#include "galelearn/rng.hpp"

using namespace galelearn;
using namespace galelearn::gale;
using seqcore::BitString;

TEST_SUITE_BEGIN("gale");

namespace {

SGale constant_martingale(const Rat& value) {
    return SGale{GaleExponent::martingale(), [value](const BitString&) { return value; }};
}

}  // namespace

TEST_CASE("constant martingale satisfies the gale condition") {
    SGale d = constant_martingale(Rat(1));
    CHECK(verify_gale_condition(d, BitString()));
    CHECK(verify_gale_condition(d, BitString("0110")));
    CHECK(verify_gale_tree(d, 6));
}

TEST_CASE("flat gale with 2^s = 3/2 satisfies the condition everywhere") {
    SGale d = flat_gale(GaleExponent(Rat(3, 2)));
    // (3/4)^{k+1} * 2 = (3/4)^k * (3/2) at every node.
    CHECK(verify_gale_tree(d, 10));
    CHECK(d.value(BitString("10")) == Rat(9, 16));
    CHECK(d.value(BitString()) == Rat(1));
}

TEST_CASE("flat gale at s = 1 is the constant martingale") {
    SGale d = flat_gale(GaleExponent::martingale());
    for (auto bits : {"", "0", "111", "010101"}) {
        CHECK(d.value(BitString(bits)) == Rat(1));
    }
}

TEST_CASE("a perturbed child breaks the condition exactly") {
    SGale d = flat_gale(GaleExponent(Rat(3, 2)));
    auto inner = d.value;
    SGale tampered{d.exponent, [inner](const BitString& w) {
                       Rat v = inner(w);
                       if (w == BitString("01")) v += Rat(1, 1000);
                       return v;
                   }};
    CHECK_FALSE(verify_gale_condition(tampered, BitString("0")));
    CHECK(verify_gale_condition(tampered, BitString("1")));
    CHECK_FALSE(verify_gale_tree(tampered, 4));
}

TEST_CASE("trace of the flat gale is the powers of 3/4") {
    SGale d = flat_gale(GaleExponent(Rat(3, 2)));
    CapitalTrace trace = evaluate_trace(d, BitString("0110"));
    REQUIRE(trace.capitals.size() == 5);
    Rat expected(1);
    for (size_t i = 0; i < trace.capitals.size(); ++i) {
        CHECK(trace.capitals[i] == expected);
        expected *= Rat(3, 4);
    }
    CHECK(trace.final_capital() == Rat(81, 256));
    CHECK(trace.argmax() == 0);
}

TEST_CASE("constant martingale trace is constant") {
    CapitalTrace trace = evaluate_trace(constant_martingale(Rat(1)), BitString("0101010101"));
    for (const auto& v : trace.capitals) CHECK(v == Rat(1));
}

TEST_CASE("scaling the initial capital scales every trace entry") {
    SGale d = flat_gale(GaleExponent(Rat(3, 2)));
    Rat c(7, 3);
    SGale scaled = scale_gale(d, c);
    BitString bits("110010");
    CapitalTrace base = evaluate_trace(d, bits);
    CapitalTrace big = evaluate_trace(scaled, bits);
    for (size_t i = 0; i < base.capitals.size(); ++i) {
        CHECK(big.capitals[i] == c * base.capitals[i]);
    }
    CHECK(verify_gale_tree(scaled, 6));
}

TEST_CASE("trace CSV has one row per prefix length") {
    SGale d = flat_gale(GaleExponent(Rat(3, 2)));
    std::string csv = evaluate_trace(d, BitString("01")).to_csv();
    CHECK(csv.find("prefix_length,capital_log2,capital_num,capital_den") == 0);
    size_t rows = 0;
    for (char ch : csv) rows += ch == '\n';
    CHECK(rows == 4);  // header + 3 prefixes
    CHECK(csv.find("9,16") != std::string::npos);
}

TEST_CASE("geometric combination of constant martingales") {
    CombinedGale family{GaleExponent::martingale()};
    family.member_value = [](uint64_t, const BitString&) { return Rat(1); };
    family.flat_horizon = [](uint64_t) { return std::nullopt; };
    Rat approx = combine_and_approximate(family, BitString("0110"), 8);
    CHECK(approx == Rat(4095, 4096));  // sum of 2^-n for n = 1..12
    CHECK(Rat(1) - approx <= Rat(1, 256));
}

TEST_CASE("single-member families are weighted exactly") {
    SGale flat = flat_gale(GaleExponent(Rat(3, 2)));
    CombinedGale family{flat.exponent};
    family.max_member = 3;
    family.member_value = [flat](uint64_t n, const BitString& w) {
        return n == 3 ? flat.value(w) : Rat(0);
    };
    family.flat_horizon = [](uint64_t) { return std::nullopt; };
    BitString w("01");
    CHECK(combine_and_approximate(family, w, 4) == Rat(1, 8) * flat.value(w));
}

TEST_CASE("unsound truncation is refused") {
    // A member past its flat horizon among the omitted terms.
    CombinedGale family{GaleExponent::martingale()};
    family.member_value = [](uint64_t, const BitString&) { return Rat(5); };
    family.flat_horizon = [](uint64_t) { return std::optional<uint64_t>(1); };
    CHECK_THROWS_AS((void)combine_and_approximate(family, BitString("0110"), 4), PrecisionError);

    CombinedGale wide{GaleExponent(Rat(3))};  // s > 1
    wide.member_value = [](uint64_t, const BitString&) { return Rat(1); };
    wide.flat_horizon = [](uint64_t) { return std::nullopt; };
    CHECK_THROWS_AS((void)combine_and_approximate(wide, BitString(), 4), PrecisionError);
}

TEST_CASE("exponent must be positive") {
    CHECK_THROWS_AS(GaleExponent(Rat(0)), ConfigError);
    CHECK_THROWS_AS(GaleExponent(Rat(-1, 2)), ConfigError);
}

TEST_SUITE_END();
