#include "strahler/expect.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "strahler/combinatorics.hpp"
#include "strahler/error.hpp"

namespace strahler {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Float weight tables up to this magnitude are kept (about n^2/4 doubles total).
constexpr int kWeightCacheMaxN = 4096;

std::string memo_key(int n, int r, const Observable& f) {
  return std::to_string(n) + ':' + std::to_string(r) + ':' + f.text();
}

// (S_r, ..., S_{r+p-1}) of the single leaf.
std::vector<std::int64_t> leaf_window(int r, int p) {
  std::vector<std::int64_t> values(static_cast<std::size_t>(p), 0);
  if (r == 1) values[0] = 1;
  return values;
}

void check_query(const ExpectationQuery& q) {
  if (q.n < 1) throw std::invalid_argument("magnitude must be >= 1");
  if (q.r < 1) throw std::invalid_argument("order must be >= 1");
}

const Observable& first_power() {
  static const Observable f = parse("S1");
  return f;
}

const Observable& second_power() {
  static const Observable f = parse("S1^2");
  return f;
}

}  // namespace

Value Value::from_exact(Rational q) {
  Value v;
  v.mode = Mode::exact;
  v.approx = to_double(q);
  v.exact = std::move(q);
  return v;
}

Value Value::from_estimate(const Estimate& e) {
  Value v;
  v.mode = Mode::floating;
  v.approx = e.value;
  v.rel_error_bound = e.rel_error_bound;
  return v;
}

ExpectationEngine::ExpectationEngine(EngineLimits limits)
    : limits_(limits), warning_sink_([](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }) {}

void ExpectationEngine::set_warning_sink(std::function<void(const std::string&)> sink) {
  warning_sink_ = std::move(sink);
}

void ExpectationEngine::warn(const std::string& message) {
  if (warning_sink_) warning_sink_(message);
}

void ExpectationEngine::check_exact_limit(int n) const {
  if (n > limits_.exact_max_n) {
    throw LimitExceeded("exact mode magnitude " + std::to_string(n) + " exceeds the limit " +
                        std::to_string(limits_.exact_max_n));
  }
}

const ExpectationEngine::Histogram& ExpectationEngine::profile_histogram(int n) {
  {
    std::lock_guard lock(mutex_);
    auto it = histograms_.find(n);
    if (it != histograms_.end()) return it->second;
  }
  Histogram hist;
  for_each_tree(
      n, [&hist](const BinaryTree& t) { ++hist[branch_counts(t).counts]; }, limits_.enumeration_max_n);
  std::lock_guard lock(mutex_);
  return histograms_.try_emplace(n, std::move(hist)).first->second;
}

Rational ExpectationEngine::expectation_bruteforce(const ExpectationQuery& q) {
  check_query(q);
  const Histogram& hist = profile_histogram(q.n);
  Rational total = 0;
  for (const auto& [counts, multiplicity] : hist) {
    BranchProfile profile{counts, q.n};
    total += evaluate(q.f, profile.window(q.r, q.f.arity())) * Rational(BigInt(static_cast<long>(multiplicity)));
  }
  return total / Rational(catalan(q.n - 1));
}

Rational ExpectationEngine::total_exact(int n, int r, const Observable& f) {
  if (n == 1) return evaluate(f, leaf_window(r, f.arity()));
  if (r == 1 && f.arity() == 1) {
    const std::int64_t value = n;
    return Rational(catalan(n - 1)) * evaluate(f, std::span(&value, 1));
  }
  const std::string key = memo_key(n, r, f);
  {
    std::lock_guard lock(mutex_);
    auto it = exact_memo_.find(key);
    if (it != exact_memo_.end()) return it->second;
  }
  const auto& mu = multiplicity_row(n);
  Rational total = 0;
  if (r == 1) {
    const Observable g = bind_first(f, BigInt(n));
    for (int m = 1; m <= n / 2; ++m) total += Rational(mu[static_cast<std::size_t>(m - 1)]) * total_exact(m, 1, g);
  } else {
    for (int m = 1; m <= n / 2; ++m) total += Rational(mu[static_cast<std::size_t>(m - 1)]) * total_exact(m, r - 1, f);
  }
  std::lock_guard lock(mutex_);
  exact_memo_.try_emplace(key, total);
  return total;
}

Rational ExpectationEngine::expectation_exact(const ExpectationQuery& q) {
  check_query(q);
  check_exact_limit(q.n);
  return total_exact(q.n, q.r, q.f) / Rational(catalan(q.n - 1));
}

std::shared_ptr<const std::vector<double>> ExpectationEngine::float_weights(int n) {
  if (n <= kWeightCacheMaxN) {
    std::lock_guard lock(mutex_);
    auto it = weight_cache_.find(n);
    if (it != weight_cache_.end()) return it->second;
  }
  auto table = std::make_shared<const std::vector<double>>(order2_weights(n, WeightMode::log_float).weights());
  if (n <= kWeightCacheMaxN) {
    std::lock_guard lock(mutex_);
    weight_cache_.try_emplace(n, table);
  }
  return table;
}

ExpectationEngine::FloatEntry ExpectationEngine::float_entry(int n, int r, const Observable& f) {
  if (n == 1) return {evaluate_double(f, leaf_window(r, f.arity())), 0.0};
  if (r == 1 && f.arity() == 1) {
    const std::int64_t value = n;
    const double v = evaluate_double(f, std::span(&value, 1));
    return {v, 8.0 * kEps * std::fabs(v)};
  }
  const std::string key = memo_key(n, r, f);
  {
    std::lock_guard lock(mutex_);
    auto it = float_memo_.find(key);
    if (it != float_memo_.end()) return it->second;
  }
  const auto weights = float_weights(n);
  const int count = n / 2;
  // Per-entry weight error: log-ratio accumulation plus normalization.
  const double weight_rel_error = kEps * (2.0 * count + 16.0);
  const std::optional<Observable> bound =
      r == 1 ? std::optional<Observable>(bind_first(f, BigInt(n))) : std::nullopt;
  FloatEntry out;
  double magnitude_sum = 0.0;
  for (int m = 1; m <= count; ++m) {
    const double w = (*weights)[static_cast<std::size_t>(m - 1)];
    const FloatEntry sub = bound ? float_entry(m, 1, *bound) : float_entry(m, r - 1, f);
    out.value += w * sub.value;
    out.abs_error += w * (sub.abs_error + std::fabs(sub.value) * weight_rel_error);
    magnitude_sum += w * std::fabs(sub.value);
  }
  out.abs_error += kEps * count * magnitude_sum;
  std::lock_guard lock(mutex_);
  float_memo_.try_emplace(key, out);
  return out;
}

Estimate ExpectationEngine::expectation_float(const ExpectationQuery& q) {
  check_query(q);
  const FloatEntry e = float_entry(q.n, q.r, q.f);
  const double rel = e.value != 0.0 ? e.abs_error / std::fabs(e.value) : e.abs_error;
  return {e.value, rel};
}

Value ExpectationEngine::expectation(const ExpectationQuery& q) {
  if (q.mode == Mode::exact) {
    if (q.n <= limits_.exact_max_n) return Value::from_exact(expectation_exact(q));
    warn("n=" + std::to_string(q.n) + " exceeds the exact limit " + std::to_string(limits_.exact_max_n) +
         "; using float mode");
  }
  return Value::from_estimate(expectation_float(q));
}

const std::map<std::int64_t, BigInt>& ExpectationEngine::distribution_counts(int n, int r) {
  const auto key = std::make_pair(n, r);
  {
    std::lock_guard lock(mutex_);
    auto it = dist_memo_.find(key);
    if (it != dist_memo_.end()) return it->second;
  }
  std::map<std::int64_t, BigInt> counts;
  if (n == 1) {
    counts[r == 1 ? 1 : 0] = 1;
  } else if (r == 1) {
    counts[n] = catalan(n - 1);
  } else {
    const auto& mu = multiplicity_row(n);
    for (int m = 1; m <= n / 2; ++m) {
      for (const auto& [s, c] : distribution_counts(m, r - 1)) counts[s] += mu[static_cast<std::size_t>(m - 1)] * c;
    }
  }
  std::lock_guard lock(mutex_);
  return dist_memo_.try_emplace(key, std::move(counts)).first->second;
}

Distribution ExpectationEngine::distribution(int n, int r) {
  if (n < 1 || r < 1) throw std::invalid_argument("distribution needs n >= 1 and r >= 1");
  check_exact_limit(n);
  Distribution d{n, r, {}};
  const BigInt total = catalan(n - 1);
  for (const auto& [s, c] : distribution_counts(n, r)) d.probability.emplace(s, make_rational(c, total));
  return d;
}

const std::map<std::int64_t, double>& ExpectationEngine::distribution_weights(int n, int r) {
  const auto key = std::make_pair(n, r);
  {
    std::lock_guard lock(mutex_);
    auto it = dist_float_memo_.find(key);
    if (it != dist_float_memo_.end()) return it->second;
  }
  std::map<std::int64_t, double> probs;
  if (n == 1) {
    probs[r == 1 ? 1 : 0] = 1.0;
  } else if (r == 1) {
    probs[n] = 1.0;
  } else {
    const auto weights = float_weights(n);
    for (int m = 1; m <= n / 2; ++m) {
      const double w = (*weights)[static_cast<std::size_t>(m - 1)];
      for (const auto& [s, p] : distribution_weights(m, r - 1)) probs[s] += w * p;
    }
  }
  std::lock_guard lock(mutex_);
  return dist_float_memo_.try_emplace(key, std::move(probs)).first->second;
}

FloatDistribution ExpectationEngine::distribution_float(int n, int r) {
  if (n < 1 || r < 1) throw std::invalid_argument("distribution needs n >= 1 and r >= 1");
  return FloatDistribution{n, r, distribution_weights(n, r)};
}

Value ExpectationEngine::bifurcation_ratio(int n, int r, const Observable& f, Mode mode) {
  const ExpectationQuery upper{n, r, f, mode};
  const ExpectationQuery lower{n, r + 1, f, mode};
  const Value num = expectation(upper);
  const Value den = expectation(lower);
  const std::string where = "n=" + std::to_string(n) + ", r=" + std::to_string(r) + ", f=" + f.text();
  if (num.exact && den.exact) {
    if (*den.exact == 0) throw ZeroDenominator("bifurcation ratio denominator is zero (" + where + ")");
    return Value::from_exact(*num.exact / *den.exact);
  }
  if (den.approx == 0.0) throw ZeroDenominator("bifurcation ratio denominator is zero (" + where + ")");
  return Value::from_estimate({num.approx / den.approx, num.rel_error_bound + den.rel_error_bound + kEps});
}

Rational ExpectationEngine::variance(int n, int r) {
  const Rational second = expectation_exact({n, r, second_power(), Mode::exact});
  const Rational first = expectation_exact({n, r, first_power(), Mode::exact});
  return second - first * first;
}

}  // namespace strahler
