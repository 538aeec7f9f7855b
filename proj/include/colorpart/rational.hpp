#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace colorpart {

using Rational = mpq_class;

/// Parses "12", "-0.125", "3.5e-2" or "7/9" into an exact rational.
/// Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// Exact value of a finite double.
Rational to_rational(double value);

double to_double(const Rational& value);

/// Canonical "p/q" (or "p" when q = 1) form.
std::string to_string(const Rational& value);

}  // namespace colorpart
