#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "strahler/observable.hpp"
#include "strahler/tree.hpp"

namespace strahler {

// Unranking is exact with big-integer ranks and is used up to this
// magnitude; above it, Remy's leaf-insertion growth (also exactly uniform).
inline constexpr int kUnrankMaxN = 64;

enum class SamplingMethod { automatic, unrank, growth };

// Per-trial generator: std::mt19937_64 seeded with the SplitMix64 output
// for (seed, trial), so every trial is an independent, reproducible stream.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

// Uniform in [0, bound); bound > 0. Rejection sampling on raw 64-bit draws,
// so results do not depend on the standard library's distributions.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);
// Uniform in [0, bound); bound > 0.
BigInt uniform_below(std::mt19937_64& rng, const BigInt& bound);

BinaryTree sample_uniform(int n, std::mt19937_64& rng, SamplingMethod method = SamplingMethod::automatic);
BinaryTree sample_uniform(int n, std::uint64_t seed, SamplingMethod method = SamplingMethod::automatic);

struct SampleConfig {
  int n = 1;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  Observable f;
  int r = 1;
  SamplingMethod method = SamplingMethod::automatic;
};

struct MonteCarloReport {
  double mean = 0.0;
  std::optional<double> stderr_of_mean;  // absent when trials == 1
  std::int64_t trials = 0;
};

// One-pass (Welford) mean of f over sampled profiles, trials in serial order.
// Throws DivisionByZero naming the offending profile.
MonteCarloReport monte_carlo(const SampleConfig& cfg);

}  // namespace strahler
