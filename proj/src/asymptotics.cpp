#include "strahler/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "strahler/error.hpp"
#include "strahler/polynomial.hpp"

namespace strahler {

namespace {

const Rational kFour = 4;

void check_order(const AsymptoticCoeffs& init, int r) {
  if (r < init.r0) {
    throw std::invalid_argument("order " + std::to_string(r) + " is below the base order " +
                                std::to_string(init.r0));
  }
}

// First two coefficients of P/Q = x^k (c0 + c1/x + ...), P and Q in x0 only.
AsymptoticCoeffs series_at_infinity(const RationalFunction& rf) {
  if (rf.num.is_zero()) throw Error("observable is identically zero; no leading term");
  const auto p = rf.num.univariate();
  const auto q = rf.den.univariate();
  const int d = static_cast<int>(p.size()) - 1;
  const int e = static_cast<int>(q.size()) - 1;
  // Coefficients in y = 1/x, highest power first.
  auto at = [](const std::vector<Rational>& c, int top, int i) {
    return i <= top ? c[static_cast<std::size_t>(top - i)] : Rational(0);
  };
  AsymptoticCoeffs out;
  out.k = d - e;
  out.a1 = at(p, d, 0) / at(q, e, 0);
  out.b1 = (at(p, d, 1) - at(q, e, 1) * out.a1) / at(q, e, 0);
  return out;
}

RationalFunction constant_rf(const Rational& c) { return {Polynomial::constant(c), Polynomial::constant(1)}; }

// E_n[S_2] and E_n[S_2^2] as rational functions of n (variable x0).
RationalFunction order2_moment(int j) {
  const Polynomial x = Polynomial::variable(0);
  auto lin = [&x](long a, long b) { return x * Polynomial::constant(a) + Polynomial::constant(b); };
  if (j == 0) return constant_rf(1);
  const RationalFunction mean{x * lin(1, -1), lin(4, -6)};
  if (j == 1) return mean;
  const RationalFunction var{x * lin(1, -1) * lin(1, -2) * lin(1, -3),
                             Polynomial::constant(2) * lin(2, -3).pow(2) * lin(2, -5)};
  return var + mean * mean;
}

std::optional<RationalFunction> reduce_two_variable(const Observable& f) {
  if (f.arity() != 2) return std::nullopt;
  const RationalFunction rf = to_rational_function(f);
  if (rf.den.depends_on(1)) return std::nullopt;
  const int degree = rf.num.degree_in(1);
  if (degree > 2) return std::nullopt;
  RationalFunction mean = constant_rf(0);
  for (int j = 0; j <= degree; ++j) {
    mean = mean + RationalFunction{rf.num.coefficient_in(1, j), Polynomial::constant(1)} * order2_moment(j);
  }
  return mean * RationalFunction{Polynomial::constant(1), rf.den};
}

Rational exact_from_double(double x) {
  Rational q(x);
  q.canonicalize();
  return q;
}

AsymptoticCoeffs fit_coeffs(const Observable& f, ExpectationEngine& engine) {
  constexpr int base = 500;
  const int ns[3] = {base, 2 * base, 4 * base};
  double values[3];
  for (int i = 0; i < 3; ++i) {
    values[i] = engine.expectation_float({ns[i], 1, f, Mode::floating}).value;
  }
  if (values[1] == 0.0 || values[2] == 0.0 || (values[2] > 0) != (values[1] > 0)) {
    throw Error("cannot fit an expansion for " + f.text() + ": values change sign or vanish");
  }
  const int k = static_cast<int>(std::lround(std::log2(values[2] / values[1])));
  // values[i] / n^k = a + b/n + c/n^2; solve the 3x3 system by elimination.
  double m[3][4];
  for (int i = 0; i < 3; ++i) {
    const double n = ns[i];
    m[i][0] = 1.0;
    m[i][1] = 1.0 / n;
    m[i][2] = 1.0 / (n * n);
    m[i][3] = values[i] / std::pow(n, k);
  }
  for (int col = 0; col < 3; ++col) {
    for (int row = col + 1; row < 3; ++row) {
      const double factor = m[row][col] / m[col][col];
      for (int j = col; j < 4; ++j) m[row][j] -= factor * m[col][j];
    }
  }
  double sol[3];
  for (int row = 2; row >= 0; --row) {
    double acc = m[row][3];
    for (int j = row + 1; j < 3; ++j) acc -= m[row][j] * sol[j];
    sol[row] = acc / m[row][row];
  }
  AsymptoticCoeffs out;
  out.k = k;
  out.a1 = exact_from_double(sol[0]);
  out.b1 = exact_from_double(sol[1]);
  out.fitted = true;
  return out;
}

}  // namespace

AsymptoticCoeffs laurent_at_infinity(const Observable& f) {
  const RationalFunction rf = to_rational_function(f);
  for (const auto* poly : {&rf.num, &rf.den}) {
    for (const auto& [mono, c] : poly->terms()) {
      if (mono.size() > 1) throw Error("laurent_at_infinity needs a one-variable observable, got " + f.text());
    }
  }
  return series_at_infinity(rf);
}

AsymptoticCoeffs initial_coeffs(const Observable& f, ExpectationEngine& engine) {
  if (f.arity() == 1) return laurent_at_infinity(f);
  if (auto reduced = reduce_two_variable(f)) return series_at_infinity(*reduced);
  return fit_coeffs(f, engine);
}

OrderCoeffs coeff_recursion(const AsymptoticCoeffs& init, int r) {
  check_order(init, r);
  const int d = r - init.r0;
  const Rational shrink = pow_int(kFour, -static_cast<long>(init.k) * d);  // 4^(-k d)
  const Rational four_d = pow_int(kFour, d);
  OrderCoeffs out;
  out.r = r;
  out.a = init.a1 * shrink;
  out.b = init.b1 * pow_int(kFour, static_cast<long>(1 - init.k) * d) +
          Rational(init.k * init.k) * init.a1 * (four_d - 1) * shrink / 6;
  return out;
}

Rational linear_recurrence_solution(const Rational& s, const Rational& t, const Rational& u,
                                    const Rational& x1, int r) {
  if (s == u) throw std::invalid_argument("linear recurrence closed form needs s != u");
  const Rational s_pow = pow_int(s, r - 1);
  return s_pow * x1 + t * u * (pow_int(u, r - 1) - s_pow) / (u - s);
}

Rational expectation_asymptotic(const AsymptoticCoeffs& init, int r, const Rational& n) {
  check_order(init, r);
  const Rational four_d = pow_int(kFour, r - init.r0);
  const Rational k2 = init.k * init.k;
  const Rational bracket = init.a1 + (four_d * init.b1 + (four_d - 1) / 6 * k2 * init.a1) / n;
  return pow_int(n / four_d, init.k) * bracket;
}

Rational expectation_leading(const AsymptoticCoeffs& init, int r, const Rational& n) {
  check_order(init, r);
  return pow_int(n / pow_int(kFour, r - init.r0), init.k) * init.a1;
}

RatioAsymptotic ratio_asymptotic(const AsymptoticCoeffs& init, int r, const Rational& n) {
  check_order(init, r);
  if (init.a1 == 0) throw std::invalid_argument("leading coefficient must be nonzero");
  const Rational limit = pow_int(kFour, init.k);
  const Rational k2 = init.k * init.k;
  const Rational correction =
      pow_int(kFour, static_cast<long>(init.k) + r - init.r0) * (6 * init.b1 + init.a1 * k2) / (2 * init.a1 * n);
  return {limit - correction, limit};
}

std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (y[i] == 0.0 || x[i] <= 0.0) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(std::fabs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) return std::nullopt;
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (count * sxy - sx * sy) / denom;
}

ConvergenceReport convergence_report(ExpectationEngine& engine, const Observable& f, int r,
                                     std::span<const int> grid, Quantity quantity, Mode mode) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1 || (i > 0 && grid[i] <= grid[i - 1])) {
      throw std::invalid_argument("grid must be strictly ascending positive integers");
    }
  }
  ConvergenceReport report;
  report.quantity = quantity;
  report.r = r;
  report.init = initial_coeffs(f, engine);
  report.threshold = quantity == Quantity::expectation ? report.init.k - 2 + 0.3 : -2 + 0.3;

  std::vector<double> xs, ys;
  bool all_zero = true;
  for (const int n : grid) {
    ConvergenceRow row;
    row.n = n;
    if (quantity == Quantity::expectation) {
      row.exact = engine.expectation({n, r, f, mode});
      row.asymptotic = expectation_asymptotic(report.init, r, Rational(n));
    } else {
      row.exact = engine.bifurcation_ratio(n, r, f, mode);
      row.asymptotic = ratio_asymptotic(report.init, r, Rational(n)).value;
    }
    if (row.exact.exact) {
      const Rational diff = *row.exact.exact - row.asymptotic;
      row.residual = to_double(diff);
      row.residual_zero = diff == 0;
    } else {
      row.residual = row.exact.approx - to_double(row.asymptotic);
      row.residual_zero = row.residual == 0.0;
    }
    all_zero = all_zero && row.residual_zero;
    xs.push_back(n);
    ys.push_back(row.residual_zero ? 0.0 : row.residual);
    report.rows.push_back(std::move(row));
  }
  report.slope = loglog_slope(xs, ys);
  report.converged = all_zero || (report.slope && *report.slope <= report.threshold);
  return report;
}

}  // namespace strahler
