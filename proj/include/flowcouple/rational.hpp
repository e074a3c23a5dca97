#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace flowcouple {

// All masses, flow values and costs are exact.
using Rational = mpq_class;

// Accepts "3", "-2/6", "0.125", "1.5e-3". Decimals are read as exact decimal
// fractions. Throws Error(InvalidInput) on anything else.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form ("3/10", "1", "-1/2").
std::string to_string(const Rational& value);

inline Rational positive_part(const Rational& value) {
  return sgn(value) > 0 ? value : Rational(0);
}

inline Rational abs_value(const Rational& value) {
  return sgn(value) < 0 ? Rational(-value) : value;
}

}  // namespace flowcouple
