#include <doctest.h>

#include <cmath>

#include "galelearn/bitstring.hpp"
#include "galelearn/errors.hpp"
#include "galelearn/oracle.hpp"
#include "galelearn/rng.hpp"

using namespace galelearn;
using namespace galelearn::seqcore;

TEST_SUITE_BEGIN("seqcore");

TEST_CASE("enumeration of the first strings") {
    CHECK(index_to_string(0) == BitString());
    CHECK(index_to_string(1).str() == "0");
    CHECK(index_to_string(2).str() == "1");
    CHECK(index_to_string(3).str() == "00");
    CHECK(index_to_string(4).str() == "01");
    CHECK(index_to_string(5).str() == "10");
    CHECK(index_to_string(6).str() == "11");
    // First string of length n sits at index 2^n - 1.
    for (uint64_t n = 1; n <= 3; ++n) {
        CHECK(index_to_string((uint64_t{1} << n) - 1) == BitString::zeros(n));
    }
}

TEST_CASE("string_to_index inverts the enumeration") {
    CHECK(string_to_index(BitString()) == 0);
    CHECK(string_to_index(BitString("00")) == 3);
    for (LexIndex i = 0; i < 5000; ++i) {
        CHECK(string_to_index(index_to_string(i)) == i);
    }
    Rng rng(17);
    for (int t = 0; t < 1000; ++t) {
        LexIndex i = rng.below(uint64_t{1} << 40);
        CHECK(string_to_index(index_to_string(i)) == i);
    }
}

TEST_CASE("enumeration bijection holds through one million") {
    for (LexIndex i = 0; i <= 1000000; ++i) {
        if (string_to_index(index_to_string(i)) != i) {
            FAIL("bijection broke at ", i);
        }
    }
}

TEST_CASE("canonical order is length-major lexicographic") {
    for (LexIndex i = 0; i + 1 < 200; ++i) {
        CHECK(index_to_string(i) < index_to_string(i + 1));
    }
}

TEST_CASE("characteristic prefixes of the built-ins") {
    CHECK(characteristic_prefix(LanguageOracle::empty_set(), 7).str() == "0000000");
    CHECK(characteristic_prefix(LanguageOracle::full_set(), 3).str() == "111");
    // Hand-evaluated: lambda(0) in, "0","1" out, all of length 2 in.
    CHECK(characteristic_prefix(LanguageOracle::even_length(), 7).str() == "1001111");
}

TEST_CASE("bounded oracle refuses queries past its bound") {
    auto oracle = LanguageOracle::from_strings("tiny", {BitString("0")}, 2);
    CHECK(oracle.contains(BitString("0")));
    CHECK_FALSE(oracle.contains(BitString("11")));
    CHECK_THROWS_AS((void)oracle.contains(BitString("000")), BoundError);
    CHECK_THROWS_AS((void)characteristic_prefix(oracle, 15), BoundError);
}

TEST_CASE("census of tally and full sets") {
    auto tally = density_census(LanguageOracle::tally(), 5);
    REQUIRE(tally.size() == 6);
    CHECK(tally.back().cumulative_count == 6);  // one string per length, lambda included
    for (const auto& rec : tally) CHECK(rec.count_at_length == 1);

    auto full = density_census(LanguageOracle::full_set(), 3);
    CHECK(full.back().cumulative_count == 15);  // 2^4 - 1
}

TEST_CASE("census respects the resource cap") {
    CHECK_THROWS_AS((void)density_census(LanguageOracle::tally(), 20), ResourceError);
    CHECK_NOTHROW((void)density_census(LanguageOracle::tally(), 16, 16));
}

TEST_CASE("census matches a generated oracle's own bookkeeping") {
    auto gen = random_with_counts("r", 99, 8, [](uint64_t n) { return n; });
    auto records = density_census(gen.oracle, 8);
    uint64_t cumulative = 0;
    for (uint64_t n = 0; n <= 8; ++n) {
        CHECK(records[n].count_at_length == gen.inserted_per_length[n]);
        cumulative += gen.inserted_per_length[n];
        CHECK(records[n].cumulative_count == cumulative);
    }
}

TEST_CASE("prefix popcount equals census cumulative count") {
    auto oracles = {LanguageOracle::tally(), LanguageOracle::even_length(),
                    LanguageOracle::seeded_random(5, 1, 3)};
    for (const auto& L : oracles) {
        auto records = density_census(L, 9);
        for (uint64_t n = 0; n <= 9; ++n) {
            uint64_t N = (uint64_t{1} << (n + 1)) - 1;
            BitString prefix = characteristic_prefix(L, N);
            uint64_t popcount = 0;
            for (size_t i = 0; i < prefix.length(); ++i) popcount += prefix.bit(i);
            CHECK(popcount == records[n].cumulative_count);
        }
    }
}

TEST_CASE("density bound: tally is polynomially sparse at all lengths") {
    auto records = density_census(LanguageOracle::tally(), 8);
    auto good = check_density_bound(records, DensityBound::sparse_poly({1, 1}));  // p(n) = n + 1
    CHECK(good.size() == 9);
}

TEST_CASE("density bound: the full set breaks 2^sqrt(n) fast") {
    auto records = density_census(LanguageOracle::full_set(), 10);
    auto good = check_density_bound(records, DensityBound::subexp(Rat(1, 2)));
    // Independent check: cumulative 2^{n+1}-1 vs threshold 2^{sqrt(n)}.
    for (uint64_t n = 0; n <= 10; ++n) {
        bool expect = std::log2(std::pow(2.0, double(n + 1)) - 1.0) <=
                      std::pow(double(n), 0.5);
        CHECK(good.count(n) == (expect ? 1u : 0u));
    }
    CHECK(good.count(2) == 0);
    CHECK(good.count(10) == 0);
}

TEST_CASE("alternating set is good exactly at even lengths") {
    double eps = 0.9;
    auto gen = alternating_good_even(7, 10, eps);
    auto records = density_census(gen.oracle, 10);
    auto good = check_density_bound(records, DensityBound::subexp(Rat(9, 10)));
    for (uint64_t n = 0; n <= 10; ++n) {
        CHECK(good.count(n) == (n % 2 == 0 ? 1u : 0u));
    }
}

TEST_CASE("disjoint union partitions prefixed strings") {
    auto empty = disjoint_union_oracle(LanguageOracle::empty_set());
    CHECK(empty.contains(BitString("01")));
    CHECK_FALSE(empty.contains(BitString("11")));
    auto full = disjoint_union_oracle(LanguageOracle::full_set());
    CHECK(full.contains(BitString("10")));
    CHECK_FALSE(full.contains(BitString("00")));
    CHECK_FALSE(full.contains(BitString()));

    auto random = disjoint_union_oracle(LanguageOracle::seeded_random(3, 1, 2));
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        BitString x = index_to_string(rng.below(4000));
        bool zero_side = random.contains(BitString("0").concat(x));
        bool one_side = random.contains(BitString("1").concat(x));
        CHECK(zero_side != one_side);
    }
}

TEST_SUITE_END();
