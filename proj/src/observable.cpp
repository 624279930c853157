#include "strahler/observable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "strahler/error.hpp"

namespace strahler {

namespace {

using ExprPtr = std::shared_ptr<const Expr>;
using Kind = Expr::Kind;

constexpr unsigned kMaxExponent = 4096;

int precedence(const Expr& e) {
  switch (e.kind) {
    case Kind::add:
    case Kind::sub:
      return 1;
    case Kind::mul:
    case Kind::div:
      return 2;
    case Kind::pow:
      return 3;
    default:
      return 4;
  }
}

char symbol(Kind k) {
  switch (k) {
    case Kind::add:
      return '+';
    case Kind::sub:
      return '-';
    case Kind::mul:
      return '*';
    default:
      return '/';
  }
}

void print_expr(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Kind::literal:
      if (e.value >= 0) {
        out += e.value.get_str();
      } else {
        BigInt mag = -e.value;
        out += "(0-" + mag.get_str() + ")";
      }
      return;
    case Kind::variable:
      out += "S" + std::to_string(e.index);
      return;
    case Kind::pow: {
      const bool wrap = precedence(*e.lhs) < 4;
      if (wrap) out += '(';
      print_expr(*e.lhs, out);
      if (wrap) out += ')';
      out += '^';
      out += std::to_string(e.exponent);
      return;
    }
    default: {
      const int p = precedence(e);
      const bool wrap_left = precedence(*e.lhs) < p;
      const bool wrap_right = precedence(*e.rhs) <= p;
      if (wrap_left) out += '(';
      print_expr(*e.lhs, out);
      if (wrap_left) out += ')';
      out += symbol(e.kind);
      if (wrap_right) out += '(';
      print_expr(*e.rhs, out);
      if (wrap_right) out += ')';
    }
  }
}

int max_variable(const Expr& e) {
  switch (e.kind) {
    case Kind::literal:
      return 0;
    case Kind::variable:
      return e.index;
    case Kind::pow:
      return max_variable(*e.lhs);
    default:
      return std::max(max_variable(*e.lhs), max_variable(*e.rhs));
  }
}

bool same_tree(const Expr& a, const Expr& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::literal:
      return a.value == b.value;
    case Kind::variable:
      return a.index == b.index;
    case Kind::pow:
      return a.exponent == b.exponent && same_tree(*a.lhs, *b.lhs);
    default:
      return same_tree(*a.lhs, *b.lhs) && same_tree(*a.rhs, *b.rhs);
  }
}

ExprPtr make_binary(Kind kind, ExprPtr lhs, ExprPtr rhs, std::size_t offset) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  e->offset = offset;
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail_unexpected();
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool at_digit() const {
    return pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9';
  }

  [[noreturn]] void fail_unexpected() const {
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    const auto c = static_cast<unsigned char>(text_[pos_]);
    if (c >= 0x80 || c < 0x20) throw ParseError("unknown token", pos_);
    throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (at_digit()) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-')) return lhs;
      const std::size_t at = pos_;
      const Kind kind = text_[pos_++] == '+' ? Kind::add : Kind::sub;
      lhs = make_binary(kind, std::move(lhs), term(), at);
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || (text_[pos_] != '*' && text_[pos_] != '/')) return lhs;
      const std::size_t at = pos_;
      const Kind kind = text_[pos_++] == '*' ? Kind::mul : Kind::div;
      lhs = make_binary(kind, std::move(lhs), factor(), at);
    }
  }

  ExprPtr factor() {
    ExprPtr b = base();
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '^') return b;
    const std::size_t at = pos_++;
    skip_space();
    if (!at_digit()) {
      throw ParseError("exponent must be a non-negative integer literal", pos_);
    }
    const std::size_t exp_at = pos_;
    const BigInt exponent(digits());
    if (exponent > kMaxExponent) {
      throw ParseError("exponent exceeds " + std::to_string(kMaxExponent), exp_at);
    }
    auto e = std::make_shared<Expr>();
    e->kind = Kind::pow;
    e->lhs = std::move(b);
    e->exponent = static_cast<unsigned>(exponent.get_ui());
    e->offset = at;
    return e;
  }

  ExprPtr base() {
    skip_space();
    if (pos_ >= text_.size()) fail_unexpected();
    const std::size_t at = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr inner = expr();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') {
        if (pos_ >= text_.size()) throw ParseError("expected ')', got end of expression", pos_);
        throw ParseError("expected ')'", pos_);
      }
      ++pos_;
      return inner;
    }
    if (c == 'S') {
      ++pos_;
      if (!at_digit()) throw ParseError("expected variable index after 'S'", pos_);
      const BigInt index(digits());
      if (index < 1) throw ParseError("variable index must be >= 1", at + 1);
      if (index > std::numeric_limits<int>::max()) throw ParseError("variable index too large", at + 1);
      auto e = std::make_shared<Expr>();
      e->kind = Kind::variable;
      e->index = static_cast<int>(index.get_si());
      e->offset = at;
      return e;
    }
    if (at_digit()) {
      auto e = std::make_shared<Expr>();
      e->kind = Kind::literal;
      e->value = BigInt(digits());
      e->offset = at;
      return e;
    }
    fail_unexpected();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

RationalFunction symbolic(const Expr& e, bool check_denominators) {
  switch (e.kind) {
    case Kind::literal:
      return {Polynomial::constant(Rational(e.value)), Polynomial::constant(1)};
    case Kind::variable:
      return {Polynomial::variable(e.index - 1), Polynomial::constant(1)};
    case Kind::pow:
      return symbolic(*e.lhs, check_denominators).pow(e.exponent);
    default:
      break;
  }
  const RationalFunction a = symbolic(*e.lhs, check_denominators);
  const RationalFunction b = symbolic(*e.rhs, check_denominators);
  switch (e.kind) {
    case Kind::add:
      return a + b;
    case Kind::sub:
      return a - b;
    case Kind::mul:
      return a * b;
    default:
      if (b.num.is_zero()) {
        if (check_denominators) throw ParseError("division by the zero polynomial", e.offset);
        throw DivisionByZero("division by the zero polynomial");
      }
      return a / b;
  }
}

Rational eval_exact(const Expr& e, std::span<const std::int64_t> values) {
  switch (e.kind) {
    case Kind::literal:
      return Rational(e.value);
    case Kind::variable:
      return Rational(BigInt(static_cast<long>(values[static_cast<std::size_t>(e.index - 1)])));
    case Kind::pow:
      return pow_int(eval_exact(*e.lhs, values), static_cast<long>(e.exponent));
    default:
      break;
  }
  Rational a = eval_exact(*e.lhs, values);
  Rational b = eval_exact(*e.rhs, values);
  switch (e.kind) {
    case Kind::add:
      return a + b;
    case Kind::sub:
      return a - b;
    case Kind::mul:
      return a * b;
    default:
      if (b == 0) {
        if (a == 0) return 0;
        throw DivisionByZero("nonzero value divided by zero");
      }
      return a / b;
  }
}

double eval_double(const Expr& e, std::span<const std::int64_t> values) {
  switch (e.kind) {
    case Kind::literal:
      return e.value.get_d();
    case Kind::variable:
      return static_cast<double>(values[static_cast<std::size_t>(e.index - 1)]);
    case Kind::pow:
      return std::pow(eval_double(*e.lhs, values), static_cast<int>(e.exponent));
    default:
      break;
  }
  const double a = eval_double(*e.lhs, values);
  const double b = eval_double(*e.rhs, values);
  switch (e.kind) {
    case Kind::add:
      return a + b;
    case Kind::sub:
      return a - b;
    case Kind::mul:
      return a * b;
    default:
      if (b == 0.0) {
        if (a == 0.0) return 0.0;
        throw DivisionByZero("nonzero value divided by zero");
      }
      return a / b;
  }
}

ExprPtr bind_expr(const ExprPtr& e, const BigInt& value) {
  switch (e->kind) {
    case Kind::literal:
      return e;
    case Kind::variable: {
      auto out = std::make_shared<Expr>(*e);
      if (e->index == 1) {
        out->kind = Kind::literal;
        out->value = value;
        out->index = 0;
      } else {
        out->index = e->index - 1;
      }
      return out;
    }
    default: {
      auto out = std::make_shared<Expr>(*e);
      out->lhs = bind_expr(e->lhs, value);
      if (e->rhs) out->rhs = bind_expr(e->rhs, value);
      return out;
    }
  }
}

void check_arity(const Observable& f, std::span<const std::int64_t> values) {
  if (values.size() < static_cast<std::size_t>(f.arity())) {
    throw std::invalid_argument("observable " + f.text() + " needs " + std::to_string(f.arity()) +
                                " values, got " + std::to_string(values.size()));
  }
}

}  // namespace

Observable::Observable(std::shared_ptr<const Expr> root) : root_(std::move(root)) {
  arity_ = std::max(1, max_variable(*root_));
  print_expr(*root_, text_);
}

bool operator==(const Observable& a, const Observable& b) { return same_tree(a.root(), b.root()); }

Observable parse(std::string_view text) {
  Parser parser(text);
  Observable f(parser.parse_all());
  symbolic(f.root(), /*check_denominators=*/true);
  return f;
}

Rational evaluate(const Observable& f, std::span<const std::int64_t> values) {
  check_arity(f, values);
  return eval_exact(f.root(), values);
}

double evaluate_double(const Observable& f, std::span<const std::int64_t> values) {
  check_arity(f, values);
  return eval_double(f.root(), values);
}

Observable bind_first(const Observable& f, const BigInt& value) {
  if (f.arity() < 2) throw std::invalid_argument("bind_first needs an observable of arity >= 2");
  return Observable(bind_expr(f.root_ptr(), value));
}

RationalFunction to_rational_function(const Observable& f) {
  return symbolic(f.root(), /*check_denominators=*/false);
}

}  // namespace strahler
