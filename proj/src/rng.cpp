#include "galelearn/rng.hpp"

#include <algorithm>
#include <set>

namespace galelearn {

std::vector<uint64_t> Rng::sample_distinct(uint64_t k, uint64_t n) {
    std::vector<uint64_t> out;
    out.reserve(k);
    if (k >= n) {
        for (uint64_t i = 0; i < n; ++i) out.push_back(i);
        return out;
    }
    if (k > n / 2) {
        // Partial Fisher-Yates over the full index range.
        std::vector<uint64_t> pool(n);
        for (uint64_t i = 0; i < n; ++i) pool[i] = i;
        for (uint64_t i = 0; i < k; ++i) {
            uint64_t j = i + below(n - i);
            std::swap(pool[i], pool[j]);
        }
        out.assign(pool.begin(), pool.begin() + static_cast<ptrdiff_t>(k));
        std::sort(out.begin(), out.end());
        return out;
    }
    std::set<uint64_t> seen;
    while (seen.size() < k) {
        seen.insert(below(n));
    }
    out.assign(seen.begin(), seen.end());
    return out;
}

uint64_t mix_key(uint64_t seed, std::string_view bytes) {
    // FNV-1a fold, then a splitmix finalizer round keyed by the seed.
    uint64_t h = 0xcbf29ce484222325ULL ^ seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    h += 0x9e3779b97f4a7c15ULL;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    return h ^ (h >> 31);
}

}  // namespace galelearn
