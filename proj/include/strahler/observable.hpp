#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "strahler/numeric.hpp"
#include "strahler/polynomial.hpp"

namespace strahler {

struct Expr {
  enum class Kind { literal, variable, add, sub, mul, div, pow };

  Kind kind = Kind::literal;
  BigInt value;           // literal
  int index = 0;          // variable S<index>, 1-based
  unsigned exponent = 0;  // pow
  std::shared_ptr<const Expr> lhs, rhs;
  std::size_t offset = 0;  // source byte offset of the token
};

// An expression f(S1, ..., Sp) over order-relative branch counts: at base
// order r, Sj stands for S_{r+j-1}.
//
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := base ("^" uint)?
//   base   := "S" uint | uint | "(" expr ")"
class Observable {
 public:
  explicit Observable(std::shared_ptr<const Expr> root);

  const Expr& root() const noexcept { return *root_; }
  std::shared_ptr<const Expr> root_ptr() const noexcept { return root_; }
  // Largest variable index referenced, at least 1.
  int arity() const noexcept { return arity_; }
  // Canonical text; reparses to an equal tree.
  const std::string& text() const noexcept { return text_; }

  friend bool operator==(const Observable& a, const Observable& b);

 private:
  std::shared_ptr<const Expr> root_;
  int arity_ = 1;
  std::string text_;
};

// Throws ParseError on bad syntax, bad tokens, non-integer exponents and on
// division by an expression that is identically zero.
Observable parse(std::string_view text);

inline std::string print(const Observable& f) { return f.text(); }

// Exact pointwise value at values[j-1] = Sj. Division uses 0/0 := 0 and
// throws DivisionByZero for x/0 with x != 0. Requires values.size() >= arity.
Rational evaluate(const Observable& f, std::span<const std::int64_t> values);
double evaluate_double(const Observable& f, std::span<const std::int64_t> values);

// g(x1..x_{p-1}) = f(value, x1..x_{p-1}); requires arity >= 2.
Observable bind_first(const Observable& f, const BigInt& value);

// Symbolic form; variable Sj becomes polynomial variable j - 1.
RationalFunction to_rational_function(const Observable& f);

}  // namespace strahler
