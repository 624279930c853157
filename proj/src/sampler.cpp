#include "strahler/sampler.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "strahler/combinatorics.hpp"
#include "strahler/error.hpp"

namespace strahler {

namespace {

// Remy: repeatedly pick one of the 2k - 1 nodes uniformly, splice a new
// internal node above it and hang a new leaf on a uniformly chosen side.
BinaryTree grow_remy(int n, std::mt19937_64& rng) {
  const std::size_t total = static_cast<std::size_t>(2 * n - 1);
  std::vector<int> left(total, -1), right(total, -1), parent(total, -1);
  int root = 0;
  int count = 1;
  for (int k = 1; k < n; ++k) {
    const int x = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(count)));
    const bool leaf_left = (rng() >> 63) != 0;
    const int inner = count;
    const int leaf = count + 1;
    count += 2;
    const int p = parent[static_cast<std::size_t>(x)];
    parent[static_cast<std::size_t>(inner)] = p;
    if (p < 0) {
      root = inner;
    } else if (left[static_cast<std::size_t>(p)] == x) {
      left[static_cast<std::size_t>(p)] = inner;
    } else {
      right[static_cast<std::size_t>(p)] = inner;
    }
    left[static_cast<std::size_t>(inner)] = leaf_left ? leaf : x;
    right[static_cast<std::size_t>(inner)] = leaf_left ? x : leaf;
    parent[static_cast<std::size_t>(x)] = inner;
    parent[static_cast<std::size_t>(leaf)] = inner;
  }
  std::vector<std::uint8_t> code;
  code.reserve(total);
  std::vector<int> stack{root};
  while (!stack.empty()) {
    const auto v = static_cast<std::size_t>(stack.back());
    stack.pop_back();
    if (left[v] < 0) {
      code.push_back(0);
      continue;
    }
    code.push_back(1);
    stack.push_back(right[v]);
    stack.push_back(left[v]);
  }
  return BinaryTree::from_preorder(std::move(code));
}

std::string describe(const BranchProfile& profile) {
  std::string out = "(";
  for (std::size_t i = 0; i < profile.counts.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(profile.counts[i]);
  }
  return out + ")";
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + (trial + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below needs a positive bound");
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

BigInt uniform_below(std::mt19937_64& rng, const BigInt& bound) {
  if (bound <= 0) throw std::invalid_argument("uniform_below needs a positive bound");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const unsigned top_bits = static_cast<unsigned>(bits - 64 * (words - 1));
  std::vector<std::uint64_t> buf(words);
  BigInt x;
  for (;;) {
    for (auto& w : buf) w = rng();
    if (top_bits < 64) buf.back() &= (std::uint64_t{1} << top_bits) - 1;
    // Least significant word first.
    mpz_import(x.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    if (x < bound) return x;
  }
}

BinaryTree sample_uniform(int n, std::mt19937_64& rng, SamplingMethod method) {
  if (n < 1) throw std::invalid_argument("magnitude must be >= 1");
  if (method == SamplingMethod::automatic) {
    method = n <= kUnrankMaxN ? SamplingMethod::unrank : SamplingMethod::growth;
  }
  if (method == SamplingMethod::unrank) return unrank_tree(n, uniform_below(rng, catalan(n - 1)));
  return grow_remy(n, rng);
}

BinaryTree sample_uniform(int n, std::uint64_t seed, SamplingMethod method) {
  std::mt19937_64 rng(seed);
  return sample_uniform(n, rng, method);
}

MonteCarloReport monte_carlo(const SampleConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.r < 1) throw std::invalid_argument("order must be >= 1");
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t t = 0; t < cfg.trials; ++t) {
    std::mt19937_64 rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    const BranchProfile profile = branch_counts(sample_uniform(cfg.n, rng, cfg.method));
    double x = 0.0;
    try {
      x = evaluate_double(cfg.f, profile.window(cfg.r, cfg.f.arity()));
    } catch (const DivisionByZero&) {
      throw DivisionByZero("nonzero value divided by zero evaluating " + cfg.f.text() + " at r=" +
                           std::to_string(cfg.r) + " on branch profile " + describe(profile));
    }
    const double delta = x - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (x - mean);
  }
  MonteCarloReport report;
  report.mean = mean;
  report.trials = cfg.trials;
  if (cfg.trials > 1) {
    const auto t = static_cast<double>(cfg.trials);
    report.stderr_of_mean = std::sqrt(m2 / (t - 1.0) / t);
  }
  return report;
}

}  // namespace strahler
