#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "galelearn/bitstring.hpp"
#include "galelearn/rat.hpp"

namespace galelearn::seqcore {

// Exhaustive enumerations refuse lengths beyond this unless the caller
// raises the cap explicitly.
inline constexpr uint64_t kDefaultEnumerationCap = 14;

// A decidable language: a pure, deterministic membership predicate over bit
// strings. Oracles with a declared bound refuse queries past it instead of
// returning garbage (section-5 machinery consults oracles at derived
// lengths, so silent misses would corrupt expansions).
class LanguageOracle {
public:
    LanguageOracle(std::string name,
                   std::function<bool(const BitString&)> membership,
                   std::optional<uint64_t> declared_bound = std::nullopt);

    const std::string& name() const { return name_; }
    std::optional<uint64_t> declared_bound() const { return declared_bound_; }

    bool contains(const BitString& x) const;  // BoundError past declared bound

    // Built-ins.
    static LanguageOracle empty_set();
    static LanguageOracle full_set();
    static LanguageOracle tally();        // {0^n : n >= 0}
    static LanguageOracle even_length();  // {x : |x| even}
    static LanguageOracle from_strings(std::string name, const std::vector<BitString>& members,
                                       std::optional<uint64_t> declared_bound = std::nullopt);
    // Pure seeded predicate, each string independently a member with
    // probability num/den. Unbounded and O(1) per query.
    static LanguageOracle seeded_random(uint64_t seed, uint64_t num, uint64_t den);

private:
    std::string name_;
    std::function<bool(const BitString&)> membership_;
    std::optional<uint64_t> declared_bound_;
};

struct DensityRecord {
    uint64_t length = 0;
    uint64_t count_at_length = 0;
    uint64_t cumulative_count = 0;  // |L_{<=length}|
};

// A generated oracle together with the generator's own insertion counts, so
// tests can reconcile the census against independent bookkeeping.
struct GeneratedOracle {
    LanguageOracle oracle;
    std::vector<uint64_t> inserted_per_length;  // index = length
};

// Exact per-length counts: at each length n <= bound, inserts
// min(target(n), 2^n) distinct seeded strings.
GeneratedOracle random_with_counts(std::string name, uint64_t seed, uint64_t bound,
                                   const std::function<uint64_t(uint64_t)>& target_per_length);

// Set engineered so the subexponential bound 2^(n^epsilon) holds at exactly
// the even lengths <= bound (fails at every odd length in range).
GeneratedOracle alternating_good_even(uint64_t seed, uint64_t bound, double epsilon);

// First N bits of L's characteristic sequence in the standard enumeration;
// N = 2^(n+1)-1 covers exactly {0,1}^{<=n}.
BitString characteristic_prefix(const LanguageOracle& L, uint64_t N);

// Exact cumulative counts for lengths 0..n by exhaustive enumeration.
std::vector<DensityRecord> density_census(const LanguageOracle& L, uint64_t n,
                                          uint64_t cap = kDefaultEnumerationCap);

struct DensityBound {
    enum class Kind { SparsePoly, SubexpPower } kind;
    std::vector<uint64_t> poly_coeffs;  // SparsePoly: |L_{<=n}| <= c0 + c1 n + c2 n^2 + ...
    Rat epsilon;                        // SubexpPower: |L_{<=n}| <= 2^(n^epsilon)

    static DensityBound sparse_poly(std::vector<uint64_t> coeffs);
    static DensityBound subexp(const Rat& epsilon);

    bool holds(const DensityRecord& rec) const;
};

// The set of lengths (good lengths J) where the bound holds.
std::set<uint64_t> check_density_bound(const std::vector<DensityRecord>& records,
                                       const DensityBound& bound);

// S^c (+) S: maps 0x -> 1 - S(x), 1x -> S(x), lambda -> 0.
LanguageOracle disjoint_union_oracle(const LanguageOracle& S);

}  // namespace galelearn::seqcore
