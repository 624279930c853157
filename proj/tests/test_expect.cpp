#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <thread>

#include "strahler/error.hpp"
#include "strahler/expect.hpp"

using namespace strahler;

namespace {

Rational exact(ExpectationEngine& e, int n, int r, const char* f) {
  return e.expectation_exact({n, r, parse(f), Mode::exact});
}

double floating(ExpectationEngine& e, int n, int r, const char* f) {
  return e.expectation_float({n, r, parse(f), Mode::floating}).value;
}

}  // namespace

TEST_CASE("small exact values") {
  ExpectationEngine e;
  CHECK(exact(e, 5, 2, "S1") == make_rational(10, 7));
  CHECK(exact(e, 5, 2, "S1^2") == make_rational(16, 7));
  CHECK(exact(e, 12, 2, "S1") == make_rational(22, 7));
  CHECK(exact(e, 5, 1, "S2/S1") == make_rational(2, 7));
  CHECK(exact(e, 1, 1, "S1") == 1);
  CHECK(exact(e, 1, 2, "S1") == 0);
  for (int n = 1; n <= 40; ++n) CHECK(exact(e, n, 1, "S1") == n);
}

TEST_CASE("recursion matches enumeration") {
  ExpectationEngine e;
  for (const char* f : {"S1", "S1^2", "S1*S2", "(S1-1)*S1", "S2/S1", "S1+2*S2", "S3-S2/(S1+1)", "7"}) {
    const Observable obs = parse(f);
    for (int n = 1; n <= 10; ++n) {
      for (int r = 1; r <= 4; ++r) {
        const ExpectationQuery q{n, r, obs, Mode::exact};
        CHECK_MESSAGE(e.expectation_exact(q) == e.expectation_bruteforce(q), f << " n=" << n << " r=" << r);
      }
    }
  }
}

TEST_CASE("werner mean") {
  ExpectationEngine e;
  for (long n = 2; n <= 120; ++n) {
    CHECK(exact(e, static_cast<int>(n), 2, "S1") == make_rational(n * (n - 1), 2 * (2 * n - 3)));
  }
}

TEST_CASE("moon expansion residual is O(1/n)") {
  ExpectationEngine e;
  for (int r = 1; r <= 3; ++r) {
    const double shrink = std::pow(4.0, 1 - r);
    double worst = 0.0;
    for (int n = 50; n <= 300; n += 10) {
      const double moon = shrink * n + (1 - shrink) / 6;
      worst = std::max(worst, std::fabs(to_double(exact(e, n, r, "S1")) - moon) * n);
    }
    CHECK(std::isfinite(worst));
    CHECK(worst < 1.0);
  }
}

TEST_CASE("float agrees with exact") {
  ExpectationEngine e;
  for (const char* f : {"S1", "S1^2", "S2/S1", "S1*S2"}) {
    for (int n : {2, 7, 30, 100, 211, 300}) {
      for (int r = 1; r <= 4; ++r) {
        const double x = to_double(exact(e, n, r, f));
        const Estimate est = e.expectation_float({n, r, parse(f), Mode::floating});
        const double err = x == 0.0 ? std::fabs(est.value) : std::fabs(est.value - x) / std::fabs(x);
        CHECK(err <= 1e-10);
        CHECK(est.rel_error_bound < 1e-10);
      }
    }
  }
}

TEST_CASE("float mode at large magnitudes") {
  ExpectationEngine e;
  CHECK(floating(e, 1000, 2, "S1") == doctest::Approx(999000.0 / 3994.0).epsilon(1e-9));
  CHECK(floating(e, 10000, 1, "S1") == 10000.0);
}

TEST_CASE("mode dispatch and limits") {
  ExpectationEngine e({50, 10});
  std::vector<std::string> warnings;
  e.set_warning_sink([&](const std::string& w) { warnings.push_back(w); });
  const Value small = e.expectation({20, 2, parse("S1"), Mode::exact});
  CHECK(small.exact.has_value());
  CHECK(warnings.empty());
  const Value big = e.expectation({60, 2, parse("S1"), Mode::exact});
  CHECK_FALSE(big.exact.has_value());
  CHECK(big.mode == Mode::floating);
  CHECK(warnings.size() == 1);
  CHECK_THROWS_AS(exact(e, 60, 2, "S1"), LimitExceeded);
  CHECK_THROWS_AS(e.expectation_bruteforce({11, 1, parse("S1"), Mode::exact}), LimitExceeded);
  CHECK_THROWS_AS(e.distribution(51, 2), LimitExceeded);
}

TEST_CASE("distributions") {
  ExpectationEngine e;
  const Distribution d52 = e.distribution(5, 2);
  CHECK(d52.probability == std::map<std::int64_t, Rational>{{1, make_rational(4, 7)}, {2, make_rational(3, 7)}});
  const Distribution d43 = e.distribution(4, 3);
  CHECK(d43.probability == std::map<std::int64_t, Rational>{{0, make_rational(4, 5)}, {1, make_rational(1, 5)}});
}

TEST_CASE("distribution properties") {
  ExpectationEngine e;
  for (int n = 1; n <= 60; ++n) {
    const int max_order = static_cast<int>(std::floor(std::log2(n))) + 1;
    for (int r = 1; r <= 6; ++r) {
      const Distribution d = e.distribution(n, r);
      Rational total = 0, mean = 0;
      for (const auto& [s, p] : d.probability) {
        total += p;
        mean += Rational(BigInt(static_cast<long>(s))) * p;
        CHECK(p > 0);
        if (r > max_order) CHECK(s == 0);
      }
      CHECK(total == 1);
      CHECK(mean == exact(e, n, r, "S1"));
      double ftotal = 0.0;
      for (const auto& [s, p] : e.distribution_float(n, r).probability) ftotal += p;
      CHECK(ftotal == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("bifurcation ratios") {
  ExpectationEngine e;
  CHECK(*e.bifurcation_ratio(12, 1, parse("S1"), Mode::exact).exact == make_rational(42, 11));
  CHECK(*e.bifurcation_ratio(100, 1, parse("S1"), Mode::exact).exact == make_rational(394, 99));
  CHECK(*e.bifurcation_ratio(30, 2, parse("5"), Mode::exact).exact == 1);
  CHECK_THROWS_AS(e.bifurcation_ratio(4, 3, parse("S1"), Mode::exact), ZeroDenominator);
  CHECK(e.bifurcation_ratio(5000, 1, parse("S1"), Mode::floating).approx == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("variance") {
  ExpectationEngine e;
  for (int n = 1; n <= 30; ++n) CHECK(e.variance(n, 1) == 0);
  CHECK(e.variance(5, 2) == make_rational(12, 49));
  CHECK(e.variance(5, 2) == exact(e, 5, 2, "S1^2") - exact(e, 5, 2, "S1") * exact(e, 5, 2, "S1"));
}

TEST_CASE("concurrent queries agree") {
  ExpectationEngine shared;
  std::vector<Rational> results(4);
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i) {
    threads.emplace_back([&, i] { results[static_cast<std::size_t>(i)] = exact(shared, 80 + i, 3, "S1^2"); });
  }
  for (auto& t : threads) t.join();
  ExpectationEngine fresh;
  for (int i = 0; i < 4; ++i) CHECK(results[static_cast<std::size_t>(i)] == exact(fresh, 80 + i, 3, "S1^2"));
}

TEST_CASE("invalid queries") {
  ExpectationEngine e;
  CHECK_THROWS(exact(e, 0, 1, "S1"));
  CHECK_THROWS(exact(e, 5, 0, "S1"));
}
