#include "galelearn/rat.hpp"

#include <cmath>

#include "galelearn/errors.hpp"

namespace galelearn {

Rat rat_parse(const std::string& text) {
    if (text.empty()) {
        throw ConfigError("empty rational literal");
    }
    for (char c : text) {
        if (!(c == '/' || c == '-' || (c >= '0' && c <= '9'))) {
            throw ConfigError("bad rational literal: " + text);
        }
    }
    mpq_class v;
    if (v.set_str(text, 10) != 0) {
        throw ConfigError("bad rational literal: " + text);
    }
    if (v.get_den() == 0) {
        throw ConfigError("zero denominator: " + text);
    }
    v.canonicalize();
    return v;
}

std::string rat_str(const Rat& v) {
    return v.get_str();
}

Rat rat_pow(const Rat& base, long e) {
    if (e == 0) {
        return Rat(1);
    }
    bool invert = e < 0;
    unsigned long mag = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    if (invert && base == 0) {
        throw ConfigError("negative power of zero");
    }
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), mag);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), mag);
    Rat r = invert ? Rat(den, num) : Rat(num, den);
    r.canonicalize();
    return r;
}

namespace {

double log2_mpz(const mpz_class& v) {
    signed long exp = 0;
    double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log2(mant) + static_cast<double>(exp);
}

}  // namespace

double rat_log2(const Rat& v) {
    if (v <= 0) {
        throw ConfigError("log2 of nonpositive rational");
    }
    return log2_mpz(v.get_num()) - log2_mpz(v.get_den());
}

double rat_double(const Rat& v) {
    return v.get_d();
}

uint64_t ceil_log2_uint(const mpz_class& v) {
    if (v <= 0) {
        throw ConfigError("ceil_log2 of nonpositive integer");
    }
    size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    bool pow2 = mpz_popcount(v.get_mpz_t()) == 1;
    return static_cast<uint64_t>(bits) - (pow2 ? 1 : 0);
}

}  // namespace galelearn
