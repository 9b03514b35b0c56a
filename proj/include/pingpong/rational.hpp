#pragma once

// Exact scalars. Integer and Rational are GMP values; mpq_class arithmetic keeps
// every result canonical (gcd 1, positive denominator).

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pingpong {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws std::domain_error on den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "7", "-3/2", "+4/6" (also accepts the U+2212 minus sign).
/// Throws std::invalid_argument with the offending text on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

bool is_integer(const Rational& q);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);
Rational abs(const Rational& q);
int sign(const Rational& q);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

}  // namespace pingpong
