#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gatp {

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses `[-]digits[/digits]`. Returns false on malformed input or a
/// zero denominator.
bool parse_rational(std::string_view text, Rational& out);

/// Lowest-terms text, sign on the numerator, "/1" omitted.
std::string to_string(const Rational& q);

} // namespace gatp
