#pragma once

#include <optional>
#include <span>
#include <vector>

#include "strahler/expect.hpp"
#include "strahler/numeric.hpp"
#include "strahler/observable.hpp"

namespace strahler {

// Initial data E_n[f at base r0] = a1 n^k + b1 n^(k-1) + O(n^(k-2)).
struct AsymptoticCoeffs {
  int k = 0;
  Rational a1 = 1;
  Rational b1 = 0;
  int r0 = 1;
  // True when (a1, b1) were fitted numerically rather than derived exactly.
  bool fitted = false;
};

struct OrderCoeffs {
  int r = 1;
  Rational a;
  Rational b;
};

// (k, a1, b1) of a one-variable rational observable at n -> infinity, by
// exact series division in 1/n. Throws Error for a zero numerator or an
// observable that uses variables beyond S1.
AsymptoticCoeffs laurent_at_infinity(const Observable& f);

// Initial data for f at base order 1. One-variable f: laurent_at_infinity.
// Two-variable f that is polynomial of degree <= 2 in S2 with an S1-only
// denominator: exact reduction through the closed forms of E_n[S2] and
// E_n[S2^2]. Anything else: fitted from float-mode values at large n.
AsymptoticCoeffs initial_coeffs(const Observable& f, ExpectationEngine& engine);

// a_r = a1 / 4^(k d), b_r = b1 / 4^((k-1) d) + k^2 a1 (4^d - 1) / (6 * 4^(k d)),
// with d = r - r0. Requires r >= r0.
OrderCoeffs coeff_recursion(const AsymptoticCoeffs& init, int r);

// x_r = s^(r-1) x1 + t u (u^(r-1) - s^(r-1)) / (u - s), the solution of
// x_{r+1} = s x_r + t u^r. Requires s != u.
Rational linear_recurrence_solution(const Rational& s, const Rational& t, const Rational& u,
                                    const Rational& x1, int r);

// (n / 4^d)^k { a1 + (4^d b1 + (4^d - 1) k^2 a1 / 6) / n }.
Rational expectation_asymptotic(const AsymptoticCoeffs& init, int r, const Rational& n);
// Leading term only: (n / 4^d)^k a1.
Rational expectation_leading(const AsymptoticCoeffs& init, int r, const Rational& n);

struct RatioAsymptotic {
  Rational value;  // 4^k - 4^(k+d) (6 b1 + a1 k^2) / (2 a1 n)
  Rational limit;  // 4^k
};

RatioAsymptotic ratio_asymptotic(const AsymptoticCoeffs& init, int r, const Rational& n);

enum class Quantity { expectation, ratio };

struct ConvergenceRow {
  int n = 0;
  Value exact;
  Rational asymptotic;
  double residual = 0.0;
  bool residual_zero = false;
};

struct ConvergenceReport {
  Quantity quantity = Quantity::expectation;
  int r = 1;
  AsymptoticCoeffs init;
  std::vector<ConvergenceRow> rows;
  // Least-squares slope of log|residual| against log n over nonzero residuals.
  std::optional<double> slope;
  double threshold = 0.0;
  bool converged = false;
};

// Least-squares slope of log|y| against log x; nullopt with fewer than two
// nonzero points.
std::optional<double> loglog_slope(std::span<const double> x, std::span<const double> y);

// Grid must be strictly ascending. Residual = engine value - truncated
// expansion; the remainder is expected at O(n^(k-2)) for expectations and
// O(n^-2) for ratios, with 0.3 of slack on the fitted slope.
ConvergenceReport convergence_report(ExpectationEngine& engine, const Observable& f, int r,
                                     std::span<const int> grid, Quantity quantity,
                                     Mode mode = Mode::exact);

}  // namespace strahler
