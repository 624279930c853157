#pragma once

#include <vector>

#include "strahler/numeric.hpp"

namespace strahler {

// c_i = (2i)! / (i! (i+1)!) = #Omega_{i+1}.
BigInt catalan(int i);

// Number of magnitude-n trees that the leaf-removal transform maps onto one
// fixed magnitude-m tree: C(n-2, n-2m) * 2^(n-2m). Zero outside 1 <= m <= n/2.
BigInt multiplicity(int n, int m);

// #{T in Omega_n : S_2(T) = m} = multiplicity(n, m) * catalan(m - 1).
BigInt class_size(int n, int m);

// multiplicity(n, m) for m = 1..floor(n/2), index m - 1. Cached per n.
const std::vector<BigInt>& multiplicity_row(int n);

enum class WeightMode { exact, log_float };

// Distribution of S_2 over Omega_n: w(n, m) = class_size(n, m) / c_{n-1}.
class WeightTable {
 public:
  int n() const noexcept { return n_; }
  WeightMode mode() const noexcept { return mode_; }
  int max_m() const noexcept { return n_ / 2; }

  // Exact entries; only in exact mode.
  const Rational& exact(int m) const;
  // exp(log_weight(m)); available in both modes.
  double weight(int m) const;
  double log_weight(int m) const;

  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  friend WeightTable order2_weights(int n, WeightMode mode);
  int n_ = 0;
  WeightMode mode_ = WeightMode::exact;
  std::vector<Rational> exact_;
  std::vector<double> log_weights_;
  std::vector<double> weights_;
};

// Requires n >= 2.
WeightTable order2_weights(int n, WeightMode mode);

// Log-domain normalized weights, index m - 1, computed without big integers.
// Consecutive ratios w(m+1)/w(m) = (n-2m)(n-2m-1) / (4 m (m+1)) are summed in
// log space outward from the mode and normalized at the end.
std::vector<double> log_order2_weights(int n);

}  // namespace strahler
