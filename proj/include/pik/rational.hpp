#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pik {

// Arbitrary-precision rational; GMP keeps it canonical (lowest terms, positive
// denominator) after every arithmetic operation.
using Rational = mpq_class;

/// num/den in lowest terms (the two-argument mpq_class constructor does not
/// reduce). Throws std::invalid_argument if den is zero.
Rational make_rational(long num, long den);

/// Parses "p/q", "p" or a finite decimal literal such as "0.25" or "-1e-3".
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

/// Decimal rendering with the given number of significant digits.
std::string to_decimal(const Rational& value, int significant_digits = 12);

/// Exact value of a finite double.
Rational from_double(double value);

/// Best rational approximation with denominator at most `max_denominator`
/// (continued-fraction convergents and semiconvergents).
Rational approximate(double value, long max_denominator);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace pik
