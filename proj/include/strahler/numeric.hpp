#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace strahler {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// base^e for any integer e (negative exponents invert).
Rational pow_int(const Rational& base, long e);

// "p/q", or "p" when q == 1.
std::string to_fraction_string(const Rational& q);

// Closest double to q (correctly handles magnitudes beyond the double range
// of numerator or denominator individually).
double to_double(const Rational& q);

// 12 significant digits, the fixed decimal precision used in every table.
std::string format_decimal(double x);

}  // namespace strahler
