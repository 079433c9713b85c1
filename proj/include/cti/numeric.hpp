// Exact rational arithmetic and decimal conversion.
#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace cti {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Parses a decimal literal such as "0.48", "-1.5", "3", "1e-5" exactly.
/// Throws std::invalid_argument on malformed input.
Rational parse_decimal(std::string_view text);

/// Parses either a decimal literal or a fraction "num/den".
Rational parse_rational(std::string_view text);

/// Fixed-point rendering with round-half-up at `decimals` places.
std::string format_fixed(const Rational& value, int decimals);

/// "num/den" in lowest terms ("3/8", "0/1").
std::string format_fraction(const Rational& value);

double to_double(const Rational& value);

}  // namespace cti
