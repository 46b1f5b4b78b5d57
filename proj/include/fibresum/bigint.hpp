#pragma once

#include <gmpxx.h>

#include <string>

namespace fibresum {

using BigInt = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const BigInt& v) { return v.get_str(); }

std::string to_string(const Rational& v);

/// Parses an exact rational from "a", "a/b" or a finite decimal "a.bcd".
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& text);

/// Parses an integer in base 10. Throws std::invalid_argument.
BigInt parse_bigint(const std::string& text);

}  // namespace fibresum
