#include <gtest/gtest.h>

#include <random>

#include "patavoid/patavoid.hpp"

using namespace patavoid;

namespace {

std::vector<Integer> ints(std::initializer_list<long long> v) { return {v.begin(), v.end()}; }

// Integer-coefficient polynomial sampled at n = first..first+count-1, with its
// leading coefficient forced nonzero.
struct Sample {
  std::vector<Integer> coefficients;
  std::vector<Integer> terms;
};

Sample random_polynomial(std::size_t degree, long first, std::size_t count, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-20, 20);
  Sample s;
  for (std::size_t i = 0; i <= degree; ++i) s.coefficients.emplace_back(coef(rng));
  if (s.coefficients.back() == 0) s.coefficients.back() = 3;
  for (std::size_t k = 0; k < count; ++k) {
    const Integer n = first + static_cast<long>(k);
    Integer v = 0;
    for (auto it = s.coefficients.rbegin(); it != s.coefficients.rend(); ++it) v = v * n + *it;
    s.terms.push_back(v);
  }
  return s;
}

}  // namespace

TEST(Polynomial, ReferenceClassDegree) {
  const auto seq = ints({1, 2, 6, 20, 58, 141, 297, 561, 975, 1588});
  const auto fit = detect_eventual_polynomial(seq, 1, 7);
  ASSERT_TRUE(fit);
  EXPECT_EQ(fit->degree, 4u);
  EXPECT_EQ(fit->threshold, 1);
  for (std::size_t i = 0; i < seq.size(); ++i) EXPECT_EQ(fit->polynomial(Rational(i + 1)), Rational(seq[i]));
}

TEST(Polynomial, Constant) {
  const auto fit = detect_eventual_polynomial(ints({5, 5, 5, 5, 5, 5, 5}), 1, 7);
  ASSERT_TRUE(fit);
  EXPECT_EQ(fit->degree, 0u);
  EXPECT_EQ(fit->threshold, 1);
  EXPECT_EQ(fit->polynomial.coefficients, std::vector<Rational>{Rational(5)});
}

TEST(Polynomial, NeedsDPlusThreeTerms) {
  // Three terms fit any quadratic, so a quadratic needs five.
  EXPECT_THROW(detect_eventual_polynomial(ints({1, 2, 4}), 1, 7), InvalidInput);
  const auto fit = detect_eventual_polynomial(ints({1, 2, 4, 7, 11}), 1, 7);
  ASSERT_TRUE(fit);
  EXPECT_EQ(fit->degree, 2u);
  // 2^n: no degree up to 7 within 11 terms
  std::vector<Integer> pow2;
  for (int i = 0; i < 11; ++i) pow2.push_back(Integer(1) << i);
  EXPECT_FALSE(detect_eventual_polynomial(pow2, 0, 7));
}

TEST(Polynomial, ThresholdUsesCallerIndexing) {
  const auto seq = ints({9, 1, 3, 5, 7, 9, 11});
  const auto zero_based = detect_eventual_polynomial(seq, 0, 7);
  const auto one_based = detect_eventual_polynomial(seq, 1, 7);
  ASSERT_TRUE(zero_based && one_based);
  EXPECT_EQ(zero_based->threshold + 1, one_based->threshold);
  // 2n - 1 when indexed from 1, 2n + 1 from 0
  EXPECT_EQ(one_based->polynomial.coefficients, (std::vector<Rational>{Rational(-3), Rational(2)}));
  EXPECT_EQ(zero_based->polynomial.coefficients, (std::vector<Rational>{Rational(-1), Rational(2)}));
}

TEST(Polynomial, RandomRoundTrip) {
  std::mt19937 rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t degree = rng() % 8;
    const auto s = random_polynomial(degree, 1, degree + 6, rng);
    const auto report = classify(s.terms, 1, 7);
    ASSERT_EQ(report.verdict, Verdict::eventual_polynomial) << trial;
    ASSERT_EQ(report.polynomial->degree, degree);
    EXPECT_EQ(report.threshold, 1);
    std::vector<Rational> expected(s.coefficients.begin(), s.coefficients.end());
    EXPECT_EQ(report.polynomial->polynomial.coefficients, expected);
  }
}

TEST(Polynomial, DegreeSevenOverTwelveTerms) {
  std::mt19937 rng(7);
  const auto s = random_polynomial(7, 1, 12, rng);
  const auto fit = detect_eventual_polynomial(s.terms, 1, 7);
  ASSERT_TRUE(fit);
  EXPECT_EQ(fit->degree, 7u);
  EXPECT_EQ(fit->polynomial.coefficients, std::vector<Rational>(s.coefficients.begin(), s.coefficients.end()));
}

TEST(Polynomial, DegreeNeverExceedsTruth) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t degree = rng() % 6;
    const auto s = random_polynomial(degree, 1, 8 + rng() % 6, rng);
    const auto fit = detect_eventual_polynomial(s.terms, 1, 7);
    ASSERT_TRUE(fit);
    EXPECT_LE(fit->degree, degree);
  }
}

TEST(Polynomial, ShiftRobustness) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t degree = rng() % 5;
    auto s = random_polynomial(degree, 1, degree + 10, rng);
    const std::size_t k = rng() % 4;
    for (std::size_t i = 0; i < k; ++i) s.terms[i] += 1000 + static_cast<long>(rng() % 1000);
    const auto fit = detect_eventual_polynomial(s.terms, 1, 7);
    ASSERT_TRUE(fit);
    EXPECT_EQ(fit->degree, degree);
    EXPECT_LE(fit->threshold, static_cast<long>(k) + 1);
  }
}

TEST(FibLike, ConstantOffsetExample) {
  const auto seq = ints({1, 2, 6, 12, 18, 26, 39, 60, 94, 149, 238, 382, 615});
  const auto fit = detect_fib_like(seq, 0);
  ASSERT_TRUE(fit);
  EXPECT_EQ(fit->a, 0);
  EXPECT_EQ(fit->b, -5);
  EXPECT_EQ(fit->threshold, 6);
  const auto report = classify(seq, 0);
  EXPECT_EQ(report.verdict, Verdict::fib_like);
  EXPECT_EQ(report.threshold, 6);
}

TEST(FibLike, Fibonacci) {
  const auto fit = detect_fib_like(ints({1, 1, 2, 3, 5, 8, 13, 21, 34}), 1);
  ASSERT_TRUE(fit);
  EXPECT_EQ(fit->a, 0);
  EXPECT_EQ(fit->b, 0);
  EXPECT_EQ(fit->threshold, 3);
  EXPECT_EQ(fit->evidence, 5u);
}

TEST(FibLike, RejectsShortAndPolynomialInput) {
  EXPECT_THROW(detect_fib_like(ints({1, 1, 2, 3, 5, 8, 13, 21}), 1), InvalidInput);
  std::vector<Integer> square;
  for (int n = 1; n <= 13; ++n) square.push_back(2 * n * n - 3 * n + 7);
  EXPECT_FALSE(detect_fib_like(square, 1));
}

TEST(FibLike, RecoversRandomRecurrences) {
  std::mt19937 rng(2718);
  std::uniform_int_distribution<int> coef(-10, 10), start(0, 50);
  for (int trial = 0; trial < 300; ++trial) {
    const Integer a = coef(rng), b = coef(rng);
    std::vector<Integer> seq{start(rng), start(rng)};
    for (long n = 3; n <= 14; ++n) seq.push_back(seq[n - 2] + seq[n - 3] + a * n + b);
    const auto fit = detect_fib_like(seq, 1);
    ASSERT_TRUE(fit);
    EXPECT_EQ(fit->a, a);
    EXPECT_EQ(fit->b, b);
    EXPECT_EQ(fit->threshold, 3);
  }
}

TEST(Classify, Precedence) {
  EXPECT_EQ(classify(ints({1, 2, 2, 0, 0, 0, 0}), 1).verdict, Verdict::eventually_zero);
  const auto zero = classify(ints({1, 1, 0, 0, 0, 0, 0}), 1);
  EXPECT_EQ(zero.verdict, Verdict::eventually_zero);
  EXPECT_EQ(zero.threshold, 3);
  const auto linear = classify(ints({1, 2, 4, 6, 8, 10, 12, 14}), 1);
  ASSERT_EQ(linear.verdict, Verdict::eventual_polynomial);
  EXPECT_EQ(linear.polynomial->degree, 1u);
  EXPECT_EQ(linear.threshold, 2);
  // two trailing zeros are not enough for the zero verdict
  EXPECT_NE(classify(ints({5, 4, 3, 1, 7, 0, 0}), 1).verdict, Verdict::eventually_zero);
  std::vector<Integer> fact{1};
  for (int i = 1; i < 12; ++i) fact.push_back(fact.back() * i);
  EXPECT_EQ(classify(fact, 0).verdict, Verdict::unclassified);
  EXPECT_THROW(classify(ints({1, 2, 3}), 1), InvalidInput);
}
