#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace galelearn {

// Deterministic, platform-independent PRNG (splitmix64). Every randomized
// path in the library is driven by an explicit seed through this type;
// nothing draws from ambient entropy.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); n must be positive.
    uint64_t below(uint64_t n) { return u64() % n; }

    bool bit() { return (u64() & 1) != 0; }

    // k distinct values from [0, n), sorted. k must be <= n.
    std::vector<uint64_t> sample_distinct(uint64_t k, uint64_t n);

private:
    uint64_t state_;
};

// Stable 64-bit key from (seed, bytes); used to derive pure per-input
// randomness for seeded oracles and reductions.
uint64_t mix_key(uint64_t seed, std::string_view bytes);

}  // namespace galelearn
