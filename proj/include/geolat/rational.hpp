#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace geolat {

/// Exact rational with arbitrary-precision numerator and denominator.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// "p/q" form, or "p" when the denominator is one.
inline std::string to_string(const Rational& value) { return value.get_str(); }

/// Parses "p", "-p" or "p/q"; throws std::invalid_argument on malformed text.
Rational parse_rational(const std::string& text);

inline Rational half() { return Rational(1, 2); }

}  // namespace geolat
