#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace galelearn::seqcore {

// A finite binary string. The empty string is valid. Ordering is the
// canonical enumeration order (length-major, then lexicographic), so sorted
// containers of BitString enumerate exactly as characteristic sequences do.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::string_view bits);  // validates chars are '0'/'1'

    static BitString zeros(size_t n) { return BitString(std::string(n, '0'), 0); }
    static BitString ones(size_t n) { return BitString(std::string(n, '1'), 0); }

    size_t length() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    int bit(size_t i) const;  // 0 or 1; bounds-checked
    const std::string& str() const { return bits_; }

    BitString append(int b) const;
    BitString concat(const BitString& other) const;
    BitString prefix(size_t n) const;      // first n bits; n <= length
    BitString suffix_from(size_t i) const; // bits i..end

    bool operator==(const BitString&) const = default;

    // Length-major, then lexicographic.
    std::strong_ordering operator<=>(const BitString& other) const {
        if (bits_.size() != other.bits_.size())
            return bits_.size() <=> other.bits_.size();
        return bits_.compare(other.bits_) <=> 0;
    }

private:
    BitString(std::string bits, int) : bits_(std::move(bits)) {}
    std::string bits_;
};

using LexIndex = uint64_t;

// i-th string in the standard enumeration lambda, 0, 1, 00, 01, 10, 11, ...
// The first string of length n has index 2^n - 1. Supports i < 2^62 - 1.
BitString index_to_string(LexIndex i);

// Inverse of index_to_string; requires length <= 62.
LexIndex string_to_index(const BitString& x);

}  // namespace galelearn::seqcore
