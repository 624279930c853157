#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "strahler/asymptotics.hpp"
#include "strahler/error.hpp"

using namespace strahler;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

}  // namespace

TEST_CASE("laurent coefficients") {
  const AsymptoticCoeffs sq = laurent_at_infinity(parse("S1^2"));
  CHECK(sq.k == 2);
  CHECK(sq.a1 == 1);
  CHECK(sq.b1 == 0);
  const AsymptoticCoeffs falling = laurent_at_infinity(parse("S1*(S1-1)"));
  CHECK(falling.k == 2);
  CHECK(falling.b1 == -1);
  const AsymptoticCoeffs ratio = laurent_at_infinity(parse("(S1-1)/(2*(2*S1-3))"));
  CHECK(ratio.k == 0);
  CHECK(ratio.a1 == q(1, 4));
  CHECK(ratio.b1 == q(1, 8));
  const AsymptoticCoeffs inverse = laurent_at_infinity(parse("3/S1"));
  CHECK(inverse.k == -1);
  CHECK(inverse.a1 == 3);
  CHECK_THROWS_AS(laurent_at_infinity(parse("S1-S1")), Error);
  CHECK_THROWS_AS(laurent_at_infinity(parse("S2/S1")), Error);
}

TEST_CASE("initial coefficients for two-variable observables") {
  ExpectationEngine e;
  const AsymptoticCoeffs c = initial_coeffs(parse("S2/S1"), e);
  CHECK(c.k == 0);
  CHECK(c.a1 == q(1, 4));
  CHECK(c.b1 == q(1, 8));
  CHECK_FALSE(c.fitted);
  const AsymptoticCoeffs sq = initial_coeffs(parse("S2^2"), e);
  CHECK(sq.k == 2);
  CHECK(sq.a1 == q(1, 16));
  CHECK_FALSE(sq.fitted);
}

TEST_CASE("fitted initial coefficients") {
  ExpectationEngine e;
  const AsymptoticCoeffs c = initial_coeffs(parse("S3*S2"), e);
  CHECK(c.fitted);
  CHECK(c.k == 2);
  CHECK(to_double(c.a1) == doctest::Approx(1.0 / 64.0).epsilon(1e-3));
}

TEST_CASE("coefficient recursion") {
  const OrderCoeffs two = coeff_recursion({1, 1, 0, 1, false}, 2);
  CHECK(two.a == q(1, 4));
  CHECK(two.b == q(1, 8));
  const AsymptoticCoeffs init{2, q(3, 5), q(-7, 3), 1, false};
  const OrderCoeffs same = coeff_recursion(init, 1);
  CHECK(same.a == init.a1);
  CHECK(same.b == init.b1);
  const OrderCoeffs three = coeff_recursion({1, q(1, 16), q(-1, 32), 2, false}, 3);
  CHECK(three.a == q(1, 64));
  CHECK(three.b == q(-3, 128));
  CHECK_THROWS_AS(coeff_recursion({1, 1, 0, 2, false}, 1), std::invalid_argument);
}

TEST_CASE("coefficient recursion invariants") {
  for (int k = -1; k <= 4; ++k) {
    const AsymptoticCoeffs init{k, q(5, 3), q(-2, 7), 1, false};
    const Rational s = pow_int(Rational(4), 1 - k);
    const Rational u = pow_int(Rational(4), -k);
    const Rational t = Rational(k * k) * init.a1 / 2;
    for (int r = 1; r <= 12; ++r) {
      const OrderCoeffs c = coeff_recursion(init, r);
      CHECK(c.a * pow_int(Rational(4), static_cast<long>(k) * (r - 1)) == init.a1);
      if (r < 12) {
        // b_{r+1} = b_r / 4^(k-1) + k^2 a_r / (2 4^k)
        const OrderCoeffs next = coeff_recursion(init, r + 1);
        CHECK(next.b == c.b * s + Rational(k * k) * c.a * u / 2);
      }
      if (s != u) CHECK(linear_recurrence_solution(s, t, u, init.b1, r) == c.b);
    }
  }
}

TEST_CASE("expectation expansion") {
  const AsymptoticCoeffs moon{1, 1, 0, 1, false};
  CHECK(expectation_asymptotic(moon, 2, 100) == q(201, 8));
  const AsymptoticCoeffs init{3, q(2, 3), q(1, 5), 1, false};
  CHECK(expectation_asymptotic(init, 1, 10) == q(2, 3) * 1000 + q(1, 5) * 100);
  const AsymptoticCoeffs ratio{0, q(1, 4), q(1, 8), 1, false};
  CHECK(expectation_asymptotic(ratio, 2, 100) == q(1, 4) + q(1, 200));
  CHECK(expectation_leading(moon, 3, 32) == 2);
}

TEST_CASE("expansion matches the k-th moment closed form") {
  for (int k = 0; k <= 5; ++k) {
    const AsymptoticCoeffs init{k, 1, 0, 1, false};
    for (int r = 1; r <= 6; ++r) {
      const Rational f = pow_int(Rational(4), r - 1);
      for (long n : {3L, 17L, 100L, 1001L}) {
        const Rational closed = pow_int(Rational(n) / f, k) * (1 + (f - 1) * Rational(k * k) / (6 * Rational(n)));
        CHECK(expectation_asymptotic(init, r, n) == closed);
      }
    }
  }
}

TEST_CASE("ratio expansion") {
  const RatioAsymptotic one = ratio_asymptotic({1, 1, 0, 1, false}, 1, 1000);
  CHECK(one.value == q(3998, 1000));
  CHECK(one.limit == 4);
  const RatioAsymptotic two = ratio_asymptotic({2, 1, 0, 1, false}, 1, 1000);
  CHECK(two.value == 16 - q(64, 2000));
  CHECK(two.limit == 16);
  const RatioAsymptotic flat = ratio_asymptotic({0, 5, 0, 1, false}, 3, 10);
  CHECK(flat.value == 1);
  for (int k = 0; k <= 4; ++k) {
    CHECK(ratio_asymptotic({k, q(7, 3), q(-1, 2), 1, false}, 2, 1000000).limit == pow_int(Rational(4), k));
  }
}

TEST_CASE("loglog slope") {
  const std::vector<double> x = {10, 100, 1000};
  const std::vector<double> y = {1e-2, 1e-4, 1e-6};
  CHECK(*loglog_slope(x, y) == doctest::Approx(-2.0));
  CHECK_FALSE(loglog_slope(x, std::vector<double>{0, 0, 1}).has_value());
}

TEST_CASE("convergence report") {
  ExpectationEngine e;
  const std::vector<int> grid = {50, 100, 200, 300};
  const ConvergenceReport exp = convergence_report(e, parse("S1"), 2, grid, Quantity::expectation);
  CHECK(exp.rows.size() == 4);
  CHECK(exp.converged);
  CHECK(*exp.slope <= exp.threshold);
  const ConvergenceReport rat = convergence_report(e, parse("S1^2"), 1, grid, Quantity::ratio);
  CHECK(rat.converged);
  const ConvergenceReport trivial = convergence_report(e, parse("S1"), 1, grid, Quantity::expectation);
  CHECK(trivial.converged);
  for (const auto& row : trivial.rows) CHECK(row.residual_zero);
  const std::vector<int> bad = {100, 50};
  CHECK_THROWS_AS(convergence_report(e, parse("S1"), 1, bad, Quantity::expectation), std::invalid_argument);
}
