#include "strahler/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

#include "strahler/error.hpp"

namespace strahler {

namespace {

void trim(Polynomial::Monomial& mono) {
  while (!mono.empty() && mono.back() == 0) mono.pop_back();
}

}  // namespace

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  p.add_term({}, c);
  return p;
}

Polynomial Polynomial::variable(int index) {
  if (index < 0) throw std::invalid_argument("variable index must be >= 0");
  Monomial mono(static_cast<std::size_t>(index) + 1, 0);
  mono.back() = 1;
  Polynomial p;
  p.add_term(std::move(mono), 1);
  return p;
}

void Polynomial::add_term(Monomial mono, const Rational& c) {
  if (c == 0) return;
  trim(mono);
  auto [it, inserted] = terms_.try_emplace(std::move(mono), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int Polynomial::degree_in(int var) const {
  int deg = 0;
  for (const auto& [mono, c] : terms_) {
    if (static_cast<std::size_t>(var) < mono.size()) deg = std::max(deg, mono[static_cast<std::size_t>(var)]);
  }
  return deg;
}

Polynomial Polynomial::coefficient_in(int var, int e) const {
  Polynomial out;
  const auto v = static_cast<std::size_t>(var);
  for (const auto& [mono, c] : terms_) {
    const int power = v < mono.size() ? mono[v] : 0;
    if (power != e) continue;
    Monomial rest = mono;
    if (v < rest.size()) rest[v] = 0;
    out.add_term(std::move(rest), c);
  }
  return out;
}

std::vector<Rational> Polynomial::univariate() const {
  std::vector<Rational> coeffs(static_cast<std::size_t>(degree_in(0)) + 1, Rational(0));
  for (const auto& [mono, c] : terms_) {
    if (mono.size() > 1) throw std::invalid_argument("polynomial is not univariate in x0");
    coeffs[mono.empty() ? 0 : static_cast<std::size_t>(mono[0])] = c;
  }
  return coeffs;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(1);
  Polynomial base = *this;
  while (e != 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e != 0) base = base * base;
  }
  return result;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [mono, c] : b.terms_) out.add_term(mono, c);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [mono, c] : b.terms_) out.add_term(mono, -c);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Polynomial::Monomial mono(std::max(ma.size(), mb.size()), 0);
      for (std::size_t i = 0; i < ma.size(); ++i) mono[i] += ma[i];
      for (std::size_t i = 0; i < mb.size(); ++i) mono[i] += mb[i];
      out.add_term(std::move(mono), ca * cb);
    }
  }
  return out;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den == b.den) return {a.num + b.num, a.den};
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  if (a.den == b.den) return {a.num - b.num, a.den};
  return {a.num * b.den - b.num * a.den, a.den * b.den};
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num * b.num, a.den * b.den};
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.num.is_zero()) throw DivisionByZero("division by the zero polynomial");
  return {a.num * b.den, a.den * b.num};
}

}  // namespace strahler
