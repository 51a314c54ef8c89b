#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace koszulq {

/// Exact rational number; GMP keeps it canonical (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Parses "p/q", "p", or "-p/q". Throws UsageError on malformed input.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace koszulq
