#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "strahler/numeric.hpp"
#include "strahler/observable.hpp"
#include "strahler/tree.hpp"

namespace strahler {

enum class Mode { exact, floating };

struct ExpectationQuery {
  int n = 1;
  int r = 1;
  Observable f;
  Mode mode = Mode::exact;
};

// Floating result with a first-order bound on its accumulated relative error.
struct Estimate {
  double value = 0.0;
  double rel_error_bound = 0.0;
};

// Result of a mode-dispatched computation. `exact` is set iff mode == exact.
struct Value {
  Mode mode = Mode::exact;
  std::optional<Rational> exact;
  double approx = 0.0;
  double rel_error_bound = 0.0;

  static Value from_exact(Rational q);
  static Value from_estimate(const Estimate& e);
};

struct Distribution {
  int n = 1;
  int r = 1;
  std::map<std::int64_t, Rational> probability;  // s -> P_n(S_r = s)
};

struct FloatDistribution {
  int n = 1;
  int r = 1;
  std::map<std::int64_t, double> probability;
};

struct EngineLimits {
  int exact_max_n = 300;
  int enumeration_max_n = kDefaultEnumerationLimit;
};

// E_n[f(S_r, ..., S_{r+p-1})] over the uniform model on Omega_n.
//
// The recursion conditions on S_2 = m: the leaf-removal transform maps the
// class {S_2 = m} uniformly onto Omega_m and lowers every order by one, so
//   E_n[f at base r] = sum_m w(n, m) E_m[f at base r - 1],
// and at base 1 the known S_1 = n is substituted into f (bind_first) before
// descending. Exact mode accumulates c_{n-1} * E_n with integer
// multiplicities; float mode uses normalized log-domain weights summed in
// ascending m.
//
// Results are memoized by (n, r, canonical observable text). All public
// members may be called concurrently.
class ExpectationEngine {
 public:
  explicit ExpectationEngine(EngineLimits limits = {});

  const EngineLimits& limits() const noexcept { return limits_; }
  // Receives mode fallback notices; defaults to stderr.
  void set_warning_sink(std::function<void(const std::string&)> sink);

  // Direct average over every tree of Omega_n. Throws LimitExceeded above
  // the enumeration ceiling.
  Rational expectation_bruteforce(const ExpectationQuery& q);
  // Throws LimitExceeded above the exact ceiling.
  Rational expectation_exact(const ExpectationQuery& q);
  Estimate expectation_float(const ExpectationQuery& q);
  // Honors q.mode; an exact request above the exact ceiling falls back to
  // float mode with a warning.
  Value expectation(const ExpectationQuery& q);

  Distribution distribution(int n, int r);
  FloatDistribution distribution_float(int n, int r);

  // E_n[f at base r] / E_n[f at base r + 1]; ZeroDenominator when the
  // denominator expectation vanishes.
  Value bifurcation_ratio(int n, int r, const Observable& f, Mode mode);

  Rational variance(int n, int r);

 private:
  struct FloatEntry {
    double value = 0.0;
    double abs_error = 0.0;
  };
  using Histogram = std::map<std::vector<std::int64_t>, std::int64_t>;

  Rational total_exact(int n, int r, const Observable& f);
  FloatEntry float_entry(int n, int r, const Observable& f);
  const std::map<std::int64_t, BigInt>& distribution_counts(int n, int r);
  const std::map<std::int64_t, double>& distribution_weights(int n, int r);
  std::shared_ptr<const std::vector<double>> float_weights(int n);
  const Histogram& profile_histogram(int n);
  void check_exact_limit(int n) const;
  void warn(const std::string& message);

  EngineLimits limits_;
  std::function<void(const std::string&)> warning_sink_;

  std::mutex mutex_;
  std::unordered_map<std::string, Rational> exact_memo_;
  std::unordered_map<std::string, FloatEntry> float_memo_;
  std::map<std::pair<int, int>, std::map<std::int64_t, BigInt>> dist_memo_;
  std::map<std::pair<int, int>, std::map<std::int64_t, double>> dist_float_memo_;
  std::unordered_map<int, std::shared_ptr<const std::vector<double>>> weight_cache_;
  std::map<int, Histogram> histograms_;
};

}  // namespace strahler
