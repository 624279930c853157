#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "strahler/combinatorics.hpp"
#include "strahler/tree.hpp"

using namespace strahler;

TEST_CASE("catalan values") {
  CHECK(catalan(0) == 1);
  CHECK(catalan(4) == 14);
  CHECK(catalan(13) == 742900);
}

TEST_CASE("catalan satisfies the convolution recurrence") {
  std::vector<BigInt> c{1};
  for (int i = 0; i < 80; ++i) {
    BigInt next = 0;
    for (int j = 0; j <= i; ++j) next += c[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(i - j)];
    c.push_back(next);
  }
  for (int i = 0; i <= 80; ++i) CHECK(catalan(i) == c[static_cast<std::size_t>(i)]);
}

TEST_CASE("multiplicity") {
  CHECK(multiplicity(5, 2) == 6);
  CHECK(multiplicity(4, 2) == 1);
  for (int m = 1; m <= 20; ++m) CHECK(multiplicity(2 * m, m) == 1);
  CHECK(multiplicity(5, 3) == 0);
  CHECK(multiplicity(5, 0) == 0);
}

TEST_CASE("class sizes") {
  CHECK(class_size(5, 2) == 6);
  CHECK(class_size(5, 1) == 8);
  CHECK(class_size(5, 1) + class_size(5, 2) == 14);
}

TEST_CASE("class sizes partition omega_n") {
  for (int n = 2; n <= 64; ++n) {
    BigInt total = 0;
    for (int m = 1; m <= n / 2; ++m) {
      total += class_size(n, m);
      CHECK(multiplicity(n, m) * catalan(m - 1) == class_size(n, m));
    }
    CHECK(total == catalan(n - 1));
  }
}

TEST_CASE("class sizes match enumeration") {
  for (int n = 2; n <= 11; ++n) {
    std::map<int, long> counts;
    for_each_tree(n, [&](const BinaryTree& t) { ++counts[static_cast<int>(branch_counts(t).at(2))]; });
    for (int m = 1; m <= n / 2; ++m) CHECK(class_size(n, m) == counts[m]);
  }
}

TEST_CASE("multiplicity row") {
  const auto& row = multiplicity_row(9);
  REQUIRE(row.size() == 4);
  for (int m = 1; m <= 4; ++m) CHECK(row[static_cast<std::size_t>(m - 1)] == multiplicity(9, m));
}

TEST_CASE("exact weights") {
  const WeightTable w5 = order2_weights(5, WeightMode::exact);
  CHECK(w5.exact(1) == make_rational(8, 14));
  CHECK(w5.exact(2) == make_rational(6, 14));
  const WeightTable w4 = order2_weights(4, WeightMode::exact);
  CHECK(w4.exact(1) == make_rational(4, 5));
  CHECK(w4.exact(2) == make_rational(1, 5));
  for (int n = 2; n <= 120; ++n) {
    const WeightTable w = order2_weights(n, WeightMode::exact);
    Rational sum = 0;
    for (int m = 1; m <= w.max_m(); ++m) sum += w.exact(m);
    CHECK(sum == 1);
  }
}

TEST_CASE("log-float weights agree with exact weights") {
  double worst = 0.0;
  for (int n = 2; n <= 300; ++n) {
    const WeightTable exact = order2_weights(n, WeightMode::exact);
    const std::vector<double> logs = log_order2_weights(n);
    std::vector<double> approx;
    for (const double lw : logs) approx.push_back(std::exp(lw));
    REQUIRE(static_cast<int>(approx.size()) == n / 2);
    for (int m = 1; m <= n / 2; ++m) {
      const double e = to_double(exact.exact(m));
      if (e < 1e-300) continue;
      worst = std::max(worst, std::fabs(approx[static_cast<std::size_t>(m - 1)] - e) / e);
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("log-float weights at large n") {
  const std::vector<double> logs = log_order2_weights(100000);
  double sum = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const double w = std::exp(logs[i]);
    sum += w;
    mean += w * double(i + 1);
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  const double n = 100000.0;
  CHECK(mean == doctest::Approx(n * (n - 1) / (2 * (2 * n - 3))).epsilon(1e-10));
}

TEST_CASE("float mode table") {
  const WeightTable t = order2_weights(50, WeightMode::log_float);
  double sum = 0.0;
  for (int m = 1; m <= t.max_m(); ++m) sum += t.weight(m);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::exp(t.log_weight(10)) == doctest::Approx(t.weight(10)));
}
