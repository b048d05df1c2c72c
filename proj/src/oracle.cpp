#include "galelearn/oracle.hpp"

#include <cmath>
#include <utility>

#include "galelearn/errors.hpp"
#include "galelearn/rng.hpp"

namespace galelearn::seqcore {

LanguageOracle::LanguageOracle(std::string name, std::function<bool(const BitString&)> membership,
                               std::optional<uint64_t> declared_bound)
    : name_(std::move(name)), membership_(std::move(membership)), declared_bound_(declared_bound) {}

bool LanguageOracle::contains(const BitString& x) const {
    if (declared_bound_ && x.length() > *declared_bound_) {
        throw BoundError("oracle '" + name_ + "' queried at length " + std::to_string(x.length()) +
                         " past declared bound " + std::to_string(*declared_bound_));
    }
    return membership_(x);
}

LanguageOracle LanguageOracle::empty_set() {
    return LanguageOracle("empty", [](const BitString&) { return false; });
}

LanguageOracle LanguageOracle::full_set() {
    return LanguageOracle("full", [](const BitString&) { return true; });
}

LanguageOracle LanguageOracle::tally() {
    return LanguageOracle("tally", [](const BitString& x) {
        for (size_t i = 0; i < x.length(); ++i) {
            if (x.bit(i) != 0) return false;
        }
        return true;
    });
}

LanguageOracle LanguageOracle::even_length() {
    return LanguageOracle("even-length", [](const BitString& x) { return x.length() % 2 == 0; });
}

LanguageOracle LanguageOracle::from_strings(std::string name, const std::vector<BitString>& members,
                                            std::optional<uint64_t> declared_bound) {
    auto set = std::make_shared<std::set<BitString>>(members.begin(), members.end());
    return LanguageOracle(
        std::move(name), [set](const BitString& x) { return set->count(x) != 0; }, declared_bound);
}

LanguageOracle LanguageOracle::seeded_random(uint64_t seed, uint64_t num, uint64_t den) {
    return LanguageOracle("random-" + std::to_string(seed), [seed, num, den](const BitString& x) {
        // Keyed by length and bits so distinct strings are independent.
        uint64_t h = mix_key(seed ^ (0xabcdULL + x.length()), x.str());
        return h % den < num;
    });
}

GeneratedOracle random_with_counts(std::string name, uint64_t seed, uint64_t bound,
                                   const std::function<uint64_t(uint64_t)>& target_per_length) {
    if (bound > 30) {
        throw ResourceError("random_with_counts bound too large");
    }
    auto members = std::make_shared<std::set<BitString>>();
    std::vector<uint64_t> inserted(bound + 1, 0);
    for (uint64_t n = 0; n <= bound; ++n) {
        uint64_t block = uint64_t{1} << n;
        uint64_t want = std::min(target_per_length(n), block);
        Rng rng(mix_key(seed, "len:" + std::to_string(n)));
        for (uint64_t off : rng.sample_distinct(want, block)) {
            members->insert(index_to_string((block - 1) + off));
        }
        inserted[n] = want;
    }
    LanguageOracle oracle(
        std::move(name), [members](const BitString& x) { return members->count(x) != 0; }, bound);
    return GeneratedOracle{std::move(oracle), std::move(inserted)};
}

GeneratedOracle alternating_good_even(uint64_t seed, uint64_t bound, double epsilon) {
    if (bound > 16) {
        throw ResourceError("alternating_good_even bound too large");
    }
    auto members = std::make_shared<std::set<BitString>>();
    std::vector<uint64_t> inserted(bound + 1, 0);
    uint64_t cumulative = 0;
    for (uint64_t n = 0; n <= bound; ++n) {
        double threshold = std::pow(2.0, std::pow(static_cast<double>(n), epsilon));
        uint64_t block = uint64_t{1} << n;
        if (n % 2 == 0) {
            // Stay at or below the threshold; length 0 contributes lambda so
            // the census is nontrivial from the start.
            if (n == 0) {
                members->insert(BitString());
                inserted[0] = 1;
                cumulative = 1;
            }
            if (static_cast<double>(cumulative) > threshold) {
                throw ConfigError("alternating_good_even: bound already exceeded at even length " +
                                  std::to_string(n) + "; raise epsilon");
            }
        } else {
            uint64_t need_total = static_cast<uint64_t>(std::floor(threshold)) + 1;
            uint64_t need = need_total > cumulative ? need_total - cumulative : 0;
            if (need > block) {
                throw ConfigError("alternating_good_even: cannot exceed bound at odd length " +
                                  std::to_string(n) + "; lower epsilon or bound");
            }
            Rng rng(mix_key(seed, "alt:" + std::to_string(n)));
            for (uint64_t off : rng.sample_distinct(need, block)) {
                members->insert(index_to_string((block - 1) + off));
            }
            inserted[n] = need;
            cumulative += need;
        }
    }
    LanguageOracle oracle(
        "alternating", [members](const BitString& x) { return members->count(x) != 0; }, bound);
    return GeneratedOracle{std::move(oracle), std::move(inserted)};
}

BitString characteristic_prefix(const LanguageOracle& L, uint64_t N) {
    BitString out;
    for (uint64_t i = 0; i < N; ++i) {
        out = out.append(L.contains(index_to_string(i)) ? 1 : 0);
    }
    return out;
}

std::vector<DensityRecord> density_census(const LanguageOracle& L, uint64_t n, uint64_t cap) {
    if (n > cap) {
        throw ResourceError("density_census length " + std::to_string(n) + " exceeds cap " +
                            std::to_string(cap));
    }
    std::vector<DensityRecord> out;
    out.reserve(n + 1);
    uint64_t cumulative = 0;
    for (uint64_t len = 0; len <= n; ++len) {
        uint64_t block = uint64_t{1} << len;
        uint64_t first = block - 1;
        uint64_t here = 0;
        for (uint64_t off = 0; off < block; ++off) {
            if (L.contains(index_to_string(first + off))) ++here;
        }
        cumulative += here;
        out.push_back(DensityRecord{len, here, cumulative});
    }
    return out;
}

DensityBound DensityBound::sparse_poly(std::vector<uint64_t> coeffs) {
    return DensityBound{Kind::SparsePoly, std::move(coeffs), Rat(0)};
}

DensityBound DensityBound::subexp(const Rat& epsilon) {
    return DensityBound{Kind::SubexpPower, {}, epsilon};
}

bool DensityBound::holds(const DensityRecord& rec) const {
    if (kind == Kind::SparsePoly) {
        uint64_t value = 0;
        uint64_t power = 1;
        for (uint64_t c : poly_coeffs) {
            value += c * power;
            power *= rec.length;
        }
        return rec.cumulative_count <= value;
    }
    if (rec.cumulative_count == 0) return true;
    double exponent = std::pow(static_cast<double>(rec.length), rat_double(epsilon));
    return std::log2(static_cast<double>(rec.cumulative_count)) <= exponent;
}

std::set<uint64_t> check_density_bound(const std::vector<DensityRecord>& records,
                                       const DensityBound& bound) {
    std::set<uint64_t> good;
    for (const auto& rec : records) {
        if (bound.holds(rec)) good.insert(rec.length);
    }
    return good;
}

LanguageOracle disjoint_union_oracle(const LanguageOracle& S) {
    std::optional<uint64_t> bound;
    if (S.declared_bound()) bound = *S.declared_bound() + 1;
    return LanguageOracle(
        S.name() + "-disjoint-union",
        [S](const BitString& y) {
            if (y.empty()) return false;
            BitString w = y.suffix_from(1);
            bool in_s = S.contains(w);
            return y.bit(0) == 1 ? in_s : !in_s;
        },
        bound);
}

}  // namespace galelearn::seqcore
