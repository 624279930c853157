#include "strahler/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace strahler {

Rational pow_int(const Rational& base, long e) {
  const unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), mag);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), mag);
  if (e < 0) std::swap(num, den);
  return make_rational(num, den);
}

std::string to_fraction_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

std::string format_decimal(double x) {
  if (x == 0.0) return "0";  // also folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace strahler
