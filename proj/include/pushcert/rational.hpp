#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace pushcert {

/// Arbitrary-precision signed integer. Subset sums over 20+ weights and
/// factorial map counts overflow any fixed width, so everything countable
/// runs through this type.
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. All weights, coordinates and verdict-relevant quantities
/// are of this type; no floating point is involved anywhere in a verdict.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "-p" or "p/q" (optional signs, no whitespace).
/// Rejects zero denominators and anything else.
Rational parse_rational(const std::string& text);

/// Renders in the same format parse_rational accepts: "p" or "p/q".
std::string rational_to_string(const Rational& value);

/// Decimal rendering for CSV output: exact when the expansion terminates,
/// otherwise rounded half-up to `max_fraction_digits` places.
std::string rational_to_decimal(const Rational& value, int max_fraction_digits = 12);

double rational_to_double(const Rational& value);

} // namespace pushcert
