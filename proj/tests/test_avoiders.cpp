#include <gtest/gtest.h>

#include <random>

#include "patavoid/patavoid.hpp"

using namespace patavoid;

namespace {

std::vector<Integer> ints(std::initializer_list<long long> v) { return {v.begin(), v.end()}; }

// 1..12 patterns, each of length 3..5.
PatternSet random_set(std::mt19937& rng) {
  std::vector<Permutation> patterns;
  const auto k = 1 + rng() % 12;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<int> v(3 + rng() % 3);
    std::iota(v.begin(), v.end(), 1);
    std::shuffle(v.begin(), v.end(), rng);
    patterns.emplace_back(v);
  }
  return PatternSet(patterns);
}

}  // namespace

TEST(Avoiders, Examples) {
  EXPECT_EQ(count_avoiders(parse_pattern_set("132"), 6).counts, ints({1, 1, 2, 5, 14, 42, 132}));
  EXPECT_EQ(count_avoiders(parse_pattern_set("1234,1243,1342,4231"), 10).from_one(),
            ints({1, 2, 6, 20, 64, 187, 492, 1170, 2543, 5116}));
  EXPECT_EQ(count_avoiders(parse_pattern_set("1"), 3).counts, ints({1, 0, 0, 0}));
  EXPECT_EQ(count_avoiders(parse_pattern_set("12,21"), 4).counts, ints({1, 1, 0, 0, 0}));
}

TEST(Avoiders, EdgeCases) {
  EXPECT_EQ(count_avoiders(PatternSet(), 0).counts, ints({1}));
  EXPECT_EQ(count_avoiders(PatternSet(), 5).counts, ints({1, 1, 2, 6, 24, 120}));
  EXPECT_EQ(count_avoiders(PatternSet({Permutation()}), 3).counts, ints({0, 0, 0, 0}));
  EXPECT_EQ(count_avoiders(parse_pattern_set("132"), 0).max_n(), 0u);
}

TEST(Avoiders, Enumerate) {
  EXPECT_EQ(enumerate_avoiders(parse_pattern_set("132"), 3),
            (std::vector<Permutation>{{1, 2, 3}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}}));
  EXPECT_EQ(enumerate_avoiders(PatternSet(), 2), (std::vector<Permutation>{{1, 2}, {2, 1}}));
  EXPECT_EQ(enumerate_avoiders(parse_pattern_set("12"), 3), (std::vector<Permutation>{{3, 2, 1}}));
  EXPECT_EQ(enumerate_avoiders(parse_pattern_set("12"), 0), (std::vector<Permutation>{Permutation()}));
}

TEST(Avoiders, NaiveOracle) {
  EXPECT_EQ(count_avoiders_naive(parse_pattern_set("132"), 5).counts, ints({1, 1, 2, 5, 14, 42}));
  const auto es = count_avoiders_naive(parse_pattern_set("321,123"), 8).counts;
  EXPECT_EQ(es, ints({1, 1, 2, 4, 4, 0, 0, 0, 0}));
  EXPECT_THROW(count_avoiders_naive(parse_pattern_set("132"), 9), InvalidInput);
}

TEST(Avoiders, CatalanToThirteen) {
  // C_n = binom(2n, n) / (n + 1), computed independently of the tree.
  const auto counts = count_avoiders(parse_pattern_set("132"), 13).counts;
  for (std::size_t n = 0; n <= 13; ++n) EXPECT_EQ(counts[n], binomial(2 * n, n) / (n + 1)) << n;
}

TEST(Avoiders, MatchesNaiveOnRandomSets) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const auto set = random_set(rng);
    ASSERT_EQ(count_avoiders(set, 7).counts, count_avoiders_naive(set, 7).counts) << to_string(set);
  }
}

TEST(Avoiders, FullRecheckAgreesWithPrunedSearch) {
  std::mt19937 rng(77);
  CountOptions full;
  full.full_recheck = true;
  for (int trial = 0; trial < 30; ++trial) {
    const auto set = random_set(rng);
    ASSERT_EQ(count_avoiders(set, 9).counts, count_avoiders(set, 9, full).counts) << to_string(set);
  }
}

TEST(Avoiders, MixedLengthPatterns) {
  // Length-2 and length-6 patterns together exercise the degenerate matchers.
  const auto set = parse_pattern_set("21,654321");
  EXPECT_EQ(count_avoiders(set, 7).counts, count_avoiders_naive(set, 7).counts);
  const auto set2 = parse_pattern_set("1,123");
  EXPECT_EQ(count_avoiders(set2, 5).counts, count_avoiders_naive(set2, 5).counts);
}

TEST(Avoiders, SymmetryInvariance) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto set = random_set(rng);
    const auto base = count_avoiders(set, 7).counts;
    for (auto g : kAllSymmetries) ASSERT_EQ(count_avoiders(apply(g, set), 7).counts, base) << name(g);
  }
}

TEST(Avoiders, MaximumDeletionStaysInClass) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto set = random_set(rng);
    for (std::size_t n = 1; n <= 7; ++n) {
      const auto parents = enumerate_avoiders(set, n - 1);
      for (const auto& pi : enumerate_avoiders(set, n)) {
        std::vector<int> rest;
        for (int v : pi)
          if (v != static_cast<int>(n)) rest.push_back(v);
        ASSERT_TRUE(std::binary_search(parents.begin(), parents.end(), flatten(rest)));
      }
    }
  }
}

TEST(Avoiders, MorePatternsNeverIncreaseCounts) {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const auto small = random_set(rng);
    auto bigger = small.patterns();
    for (const auto& p : random_set(rng)) bigger.push_back(p);
    const PatternSet big(bigger);
    ASSERT_TRUE(small.is_subset_of(big));
    const auto a = count_avoiders(small, 8).counts, b = count_avoiders(big, 8).counts;
    for (std::size_t n = 0; n <= 8; ++n) ASSERT_GE(a[n], b[n]);
  }
}

TEST(Avoiders, CountsBoundedByFactorial) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = count_avoiders(random_set(rng), 8).counts;
    EXPECT_EQ(c[0], 1);
    for (std::size_t n = 0; n <= 8; ++n) EXPECT_LE(c[n], factorial(n));
  }
}

TEST(Avoiders, NodeBudget) {
  CountOptions tight;
  tight.node_budget = 1000;
  EXPECT_THROW(count_avoiders(parse_pattern_set("1234"), 10, tight), BudgetExceeded);
  EXPECT_THROW(enumerate_avoiders(parse_pattern_set("1234"), 10, tight), BudgetExceeded);
  EXPECT_NO_THROW(count_avoiders(parse_pattern_set("12"), 50, tight));
}

TEST(Avoiders, FibonacciClassToThirty) {
  // Av_n(123,132,213) is counted by Fibonacci numbers; 30 levels is deep for the tree.
  const auto counts = count_avoiders(parse_pattern_set("123,132,213"), 30).counts;
  Integer a = 1, b = 1;
  for (std::size_t n = 1; n <= 30; ++n) {
    EXPECT_EQ(counts[n], b) << n;
    const Integer c = a + b;
    a = b;
    b = c;
  }
}
