#pragma once

#include <map>
#include <vector>

#include "strahler/numeric.hpp"

namespace strahler {

// Sparse multivariate polynomial with rational coefficients. Variables are
// 0-based; a monomial is its exponent vector with trailing zeros trimmed.
class Polynomial {
 public:
  using Monomial = std::vector<int>;

  Polynomial() = default;
  static Polynomial constant(const Rational& c);
  static Polynomial variable(int index);

  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }

  int degree_in(int var) const;
  bool depends_on(int var) const { return degree_in(var) > 0; }
  // Coefficient of x_var^e, as a polynomial in the remaining variables.
  Polynomial coefficient_in(int var, int e) const;
  // Dense coefficients c[i] of x_0^i; requires no other variable.
  std::vector<Rational> univariate() const;

  Polynomial pow(unsigned e) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void add_term(Monomial mono, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

// num / den without cancellation; den is never the zero polynomial.
struct RationalFunction {
  Polynomial num;
  Polynomial den = Polynomial::constant(1);

  RationalFunction pow(unsigned e) const { return {num.pow(e), den.pow(e)}; }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  // Throws DivisionByZero when b is identically zero.
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
};

}  // namespace strahler
