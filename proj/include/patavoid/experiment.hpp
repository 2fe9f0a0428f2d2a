#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "patavoid/avoiders.hpp"
#include "patavoid/error.hpp"
#include "patavoid/integer.hpp"
#include "patavoid/parallel.hpp"
#include "patavoid/pattern_set.hpp"
#include "patavoid/sequence_analysis.hpp"
#include "patavoid/survey.hpp"

namespace patavoid {

// Randomness: trial t of a run with seed s uses std::mt19937_64 seeded with
// splitmix64(s + t * golden_gamma), and bounded draws use rejection sampling on the
// raw 64-bit output. Both are fully specified by the standard, so runs reproduce
// bit for bit across platforms and worker counts.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(seed + trial * 0x9e3779b97f4a7c15ull);
}

/// Uniform integer in [0, bound).
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

/// Uniform `k`-subset of `pool` by a partial Fisher-Yates shuffle.
inline PatternSet sample_subset(std::vector<Permutation> pool, std::size_t k, std::mt19937_64& rng) {
  if (k > pool.size()) throw InvalidInput("cannot sample more patterns than exist");
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + uniform_below(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return PatternSet(std::move(pool));
}

enum class Bucket { zero, constant, linear, quadratic, cubic, higher_polynomial, non_polynomial };

inline constexpr std::array<Bucket, 7> kAllBuckets = {Bucket::zero,      Bucket::constant,          Bucket::linear,
                                                      Bucket::quadratic, Bucket::cubic,             Bucket::higher_polynomial,
                                                      Bucket::non_polynomial};

inline std::string_view to_string(Bucket b) {
  constexpr std::array<std::string_view, 7> names = {"zero",  "constant",          "linear",        "quadratic",
                                                     "cubic", "higher_polynomial", "non_polynomial"};
  return names[static_cast<std::size_t>(b)];
}

/// Bucket of a classified sequence of counts n = 1..N. A polynomial verdict only
/// counts when its threshold leaves at least deg + 4 terms (threshold <= N - deg - 3);
/// anything else did not evidently settle within the horizon.
inline Bucket bucket_of(const ClassificationReport& report, std::size_t max_n) {
  if (report.verdict == Verdict::eventually_zero) return Bucket::zero;
  if (report.verdict != Verdict::eventual_polynomial) return Bucket::non_polynomial;
  const auto d = report.polynomial->degree;
  if (report.threshold > static_cast<long>(max_n) - static_cast<long>(d) - 3) return Bucket::non_polynomial;
  switch (d) {
    case 0: return Bucket::constant;
    case 1: return Bucket::linear;
    case 2: return Bucket::quadratic;
    case 3: return Bucket::cubic;
    default: return Bucket::higher_polynomial;
  }
}

struct ExperimentConfig {
  std::size_t num_patterns = 12;
  std::size_t pattern_length = 4;
  std::size_t max_n = 13;
  std::size_t trials = 820;
  std::uint64_t seed = 42;
  std::size_t workers = 1;
  std::size_t max_degree = kDefaultMaxDegree;
  // Non-polynomial trials are recounted to this length (0: max_n + 3) before the
  // Fibonacci-like check, since five confirmations within max_n terms only reach
  // thresholds up to max_n - 6.
  std::size_t fib_horizon = 0;
  CountOptions count;

  std::size_t effective_fib_horizon() const noexcept { return fib_horizon ? fib_horizon : max_n + 3; }
};

struct Trial {
  PatternSet patterns;
  std::vector<Integer> counts;  // n = 1..max_n; empty if the budget was hit
  std::optional<ClassificationReport> report;
  Bucket bucket = Bucket::non_polynomial;
  bool budget_exceeded = false;
  std::optional<FibLikeFit> fib_like;  // non-polynomial trials only, on the extended horizon
  bool fib_like_within_horizon = false;
};

struct ExperimentSummary {
  ExperimentConfig config;
  std::vector<Trial> trials;
  std::array<std::size_t, 7> bucket_counts{};
  std::size_t fib_like = 0;                // non-polynomial trials obeying the recurrence
  std::size_t fib_like_within_horizon = 0;  // ... already detectable from max_n terms

  std::size_t count(Bucket b) const noexcept { return bucket_counts[static_cast<std::size_t>(b)]; }
  double fraction(Bucket b) const noexcept {
    return config.trials ? double(count(b)) / double(config.trials) : 0.0;
  }
};

inline Trial run_trial(const ExperimentConfig& config, const std::vector<Permutation>& pool, std::size_t index) {
  std::mt19937_64 rng(trial_seed(config.seed, index));
  Trial trial;
  trial.patterns = sample_subset(pool, config.num_patterns, rng);
  try {
    trial.counts = count_avoiders(trial.patterns, config.max_n, config.count).from_one();
  } catch (const BudgetExceeded&) {
    trial.budget_exceeded = true;
    return trial;
  }
  if (trial.counts.size() >= kMinPolynomialTerms) {
    trial.report = classify(trial.counts, 1, config.max_degree);
    trial.bucket = bucket_of(*trial.report, config.max_n);
  }
  // An empty level stays empty, so a single zero count already settles the class.
  if (!trial.counts.empty() && trial.counts.back() == 0) trial.bucket = Bucket::zero;
  if (trial.bucket == Bucket::non_polynomial) {
    trial.fib_like_within_horizon = trial.counts.size() >= kMinFibLikeTerms && detect_fib_like(trial.counts, 1);
    const auto horizon = std::max(config.effective_fib_horizon(), config.max_n);
    try {
      const auto extended = count_avoiders(trial.patterns, horizon, config.count).from_one();
      if (extended.size() >= kMinFibLikeTerms) trial.fib_like = detect_fib_like(extended, 1);
    } catch (const BudgetExceeded&) {
    }
  }
  return trial;
}

/// Draws `trials` random pattern sets (independently, so sets may repeat), counts
/// their avoiders for n = 1..max_n and tallies the verdicts.
inline ExperimentSummary random_experiment(const ExperimentConfig& config) {
  if (config.trials < 1) throw InvalidInput("trials must be >= 1");
  const auto pool = all_permutations(config.pattern_length);
  ExperimentSummary summary{config, {}, {}, 0};
  summary.trials.reserve(config.trials);
  ordered_parallel_map(
      config.trials, config.workers, [&](std::size_t i) { return run_trial(config, pool, i); },
      [&](std::size_t, Trial&& t) {
        ++summary.bucket_counts[static_cast<std::size_t>(t.bucket)];
        if (t.fib_like) ++summary.fib_like;
        if (t.fib_like_within_horizon) ++summary.fib_like_within_horizon;
        summary.trials.push_back(std::move(t));
      });
  return summary;
}

}  // namespace patavoid
