#include "strahler/combinatorics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace strahler {

namespace {

double log_abs(const BigInt& z) {
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

std::mutex catalan_mutex;
std::vector<BigInt> catalan_cache{1};

std::mutex row_mutex;
// std::map keeps references stable across insertions.
std::map<int, std::vector<BigInt>> multiplicity_rows;

}  // namespace

BigInt catalan(int i) {
  if (i < 0) throw std::invalid_argument("catalan index must be >= 0");
  std::lock_guard lock(catalan_mutex);
  // c_{j+1} = c_j * 2(2j+1) / (j+2)
  while (catalan_cache.size() <= static_cast<std::size_t>(i)) {
    const unsigned long j = catalan_cache.size() - 1;
    BigInt next = catalan_cache.back() * (2 * (2 * j + 1));
    mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), j + 2);
    catalan_cache.push_back(std::move(next));
  }
  return catalan_cache[static_cast<std::size_t>(i)];
}

BigInt multiplicity(int n, int m) {
  if (n < 2 || m < 1 || 2 * m > n) return 0;
  BigInt binom;
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n - 2),
               static_cast<unsigned long>(n - 2 * m));
  return binom << static_cast<mp_bitcnt_t>(n - 2 * m);
}

BigInt class_size(int n, int m) {
  if (n < 2 || m < 1 || 2 * m > n) return 0;
  return multiplicity(n, m) * catalan(m - 1);
}

const std::vector<BigInt>& multiplicity_row(int n) {
  if (n < 2) throw std::invalid_argument("multiplicity row needs n >= 2");
  std::lock_guard lock(row_mutex);
  auto it = multiplicity_rows.find(n);
  if (it != multiplicity_rows.end()) return it->second;
  std::vector<BigInt> row;
  row.reserve(static_cast<std::size_t>(n / 2));
  for (int m = 1; m <= n / 2; ++m) row.push_back(multiplicity(n, m));
  return multiplicity_rows.emplace(n, std::move(row)).first->second;
}

const Rational& WeightTable::exact(int m) const {
  if (mode_ != WeightMode::exact) throw std::logic_error("weight table is not exact");
  if (m < 1 || m > max_m()) throw std::out_of_range("weight index out of range");
  return exact_[static_cast<std::size_t>(m - 1)];
}

double WeightTable::weight(int m) const {
  if (m < 1 || m > max_m()) return 0.0;
  return weights_[static_cast<std::size_t>(m - 1)];
}

double WeightTable::log_weight(int m) const {
  if (m < 1 || m > max_m()) return -INFINITY;
  return log_weights_[static_cast<std::size_t>(m - 1)];
}

std::vector<double> log_order2_weights(int n) {
  if (n < 2) throw std::invalid_argument("order-2 weights need n >= 2");
  const int count = n / 2;
  // step[m-1] = log w(m+1) - log w(m)
  auto step = [n](int m) {
    const double a = static_cast<double>(n - 2 * m) * static_cast<double>(n - 2 * m - 1);
    const double b = 4.0 * m * (m + 1.0);
    return std::log(a) - std::log(b);
  };
  int mode = 1;
  while (mode < count && step(mode) > 0.0) ++mode;

  std::vector<double> logw(static_cast<std::size_t>(count));
  logw[static_cast<std::size_t>(mode - 1)] = 0.0;
  for (int m = mode; m < count; ++m) {
    logw[static_cast<std::size_t>(m)] = logw[static_cast<std::size_t>(m - 1)] + step(m);
  }
  for (int m = mode - 1; m >= 1; --m) {
    logw[static_cast<std::size_t>(m - 1)] = logw[static_cast<std::size_t>(m)] - step(m);
  }
  // Normalize in ascending m order.
  double total = 0.0;
  for (const double lw : logw) total += std::exp(lw);
  const double log_total = std::log(total);
  for (double& lw : logw) lw -= log_total;
  return logw;
}

WeightTable order2_weights(int n, WeightMode mode) {
  if (n < 2) throw std::invalid_argument("order-2 weights need n >= 2");
  WeightTable table;
  table.n_ = n;
  table.mode_ = mode;
  if (mode == WeightMode::exact) {
    const BigInt total = catalan(n - 1);
    for (int m = 1; m <= n / 2; ++m) {
      Rational w = make_rational(class_size(n, m), total);
      table.weights_.push_back(to_double(w));
      table.log_weights_.push_back(log_abs(w.get_num()) - log_abs(w.get_den()));
      table.exact_.push_back(std::move(w));
    }
  } else {
    table.log_weights_ = log_order2_weights(n);
    table.weights_.reserve(table.log_weights_.size());
    for (const double lw : table.log_weights_) table.weights_.push_back(std::exp(lw));
  }
  return table;
}

}  // namespace strahler
