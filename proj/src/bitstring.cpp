#include "galelearn/bitstring.hpp"

#include <bit>
#include <stdexcept>

#include "galelearn/errors.hpp"

namespace galelearn::seqcore {

BitString::BitString(std::string_view bits) : bits_(bits) {
    for (char c : bits_) {
        if (c != '0' && c != '1') {
            throw ConfigError("BitString literal may contain only '0'/'1'");
        }
    }
}

int BitString::bit(size_t i) const {
    if (i >= bits_.size()) {
        throw std::out_of_range("BitString::bit index out of range");
    }
    return bits_[i] == '1' ? 1 : 0;
}

BitString BitString::append(int b) const {
    BitString out = *this;
    out.bits_.push_back(b ? '1' : '0');
    return out;
}

BitString BitString::concat(const BitString& other) const {
    BitString out = *this;
    out.bits_ += other.bits_;
    return out;
}

BitString BitString::prefix(size_t n) const {
    if (n > bits_.size()) {
        throw std::out_of_range("BitString::prefix length out of range");
    }
    return BitString(bits_.substr(0, n), 0);
}

BitString BitString::suffix_from(size_t i) const {
    if (i > bits_.size()) {
        throw std::out_of_range("BitString::suffix_from index out of range");
    }
    return BitString(bits_.substr(i), 0);
}

BitString index_to_string(LexIndex i) {
    // i + 1 written in binary is 1 followed by the string's bits.
    uint64_t v = i + 1;
    if (v == 0) {
        throw ConfigError("lex index overflow");
    }
    int width = std::bit_width(v) - 1;  // string length
    std::string bits(static_cast<size_t>(width), '0');
    for (int k = 0; k < width; ++k) {
        if ((v >> (width - 1 - k)) & 1ULL) {
            bits[static_cast<size_t>(k)] = '1';
        }
    }
    return BitString(bits);
}

LexIndex string_to_index(const BitString& x) {
    if (x.length() > 62) {
        throw ResourceError("string_to_index supports lengths up to 62");
    }
    uint64_t v = 1;
    for (size_t k = 0; k < x.length(); ++k) {
        v = (v << 1) | static_cast<uint64_t>(x.bit(k));
    }
    return v - 1;
}

}  // namespace galelearn::seqcore
