#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace orbtrace {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q" or "p" (surrounding whitespace not allowed). Throws ParseError.
Rational parse_rational(std::string_view text);

std::string format_rational(const Rational& r);

/// Numerator/denominator as int64; throws InvalidArgument on overflow.
std::int64_t to_int64(const Integer& z);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// x^e for an integer exponent e >= 0, with 0^0 = 1.
Rational power(const Rational& x, unsigned e);

Rational factorial(unsigned n);
Rational binomial(const Rational& top, unsigned k);

}  // namespace orbtrace
