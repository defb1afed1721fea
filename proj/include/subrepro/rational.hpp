#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace subrepro {

// Arbitrary precision, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

/// Renders as "p" or "p/q".
std::string to_string(const Rational& q);
std::string to_string(const RationalVector& v);

/// Accepts "p", "-p", "p/q" with optional surrounding whitespace. Throws
/// Error(ParseError) on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Comma separated list of rationals, e.g. "1/2,3".
RationalVector parse_rational_list(std::string_view text);

Integer floor(const Rational& q);
Rational frac(const Rational& q);

std::int64_t to_int64(const Integer& z);

}  // namespace subrepro
