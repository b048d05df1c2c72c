#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace galelearn {

// Exact rational arithmetic. All capital values, weights, and thresholds in
// this library are Rat; floating point appears only in reporting and in the
// log-domain bound checks, where irrational quantities are unavoidable.
using Rat = mpq_class;

// Parses "p/q" or "p" (canonicalized, q > 0). Throws ConfigError on garbage.
Rat rat_parse(const std::string& text);

// Canonical "p/q" (or "p" when the denominator is 1), reduced form.
std::string rat_str(const Rat& v);

// Exact integer power; e may be negative (value must be nonzero then).
Rat rat_pow(const Rat& base, long e);

// log2 of a positive rational, safe for values far outside double range.
double rat_log2(const Rat& v);

// Nearest-double approximation (only meaningful for moderate magnitudes).
double rat_double(const Rat& v);

// ceil(log2(v)) for a positive integer v, exact.
uint64_t ceil_log2_uint(const mpz_class& v);

}  // namespace galelearn
