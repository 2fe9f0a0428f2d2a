#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patavoid/error.hpp"
#include "patavoid/integer.hpp"

namespace patavoid {

// Sequences are passed as a span of terms plus the index of the first term, so
// thresholds and fitted formulas are expressed in the caller's indexing.

/// Dense polynomial in n with exact rational coefficients, lowest degree first.
struct Polynomial {
  std::vector<Rational> coefficients;

  std::size_t degree() const noexcept { return coefficients.empty() ? 0 : coefficients.size() - 1; }

  Rational operator()(const Rational& n) const {
    Rational acc = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * n + *it;
    return acc;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

struct PolynomialFit {
  std::size_t degree = 0;
  long threshold = 0;        // first index from which the polynomial holds
  Polynomial polynomial;
  std::size_t evidence = 0;  // terms at or beyond the threshold
};

/// f(n) = f(n-1) + f(n-2) + a*n + b for every n >= threshold.
struct FibLikeFit {
  Integer a;
  Integer b;
  long threshold = 0;
  std::size_t evidence = 0;  // confirmations beyond the two fitted terms
};

enum class Verdict { eventually_zero, eventual_polynomial, fib_like, unclassified };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::eventually_zero: return "eventually_zero";
    case Verdict::eventual_polynomial: return "eventual_polynomial";
    case Verdict::fib_like: return "fib_like";
    case Verdict::unclassified: return "unclassified";
  }
  return "unclassified";
}

struct ClassificationReport {
  Verdict verdict = Verdict::unclassified;
  long threshold = 0;  // meaningful for every verdict except unclassified
  std::size_t evidence = 0;
  std::optional<PolynomialFit> polynomial;
  std::optional<FibLikeFit> fib_like;
};

inline constexpr std::size_t kMinPolynomialTerms = 4;
inline constexpr std::size_t kMinFibLikeTerms = 9;
inline constexpr std::size_t kFibLikeConfirmations = 5;
inline constexpr std::size_t kZeroTail = 3;
inline constexpr std::size_t kDefaultMaxDegree = 7;

namespace detail {

// True iff the d-th finite differences of `terms` are all equal.
inline bool constant_difference(std::span<const Integer> terms, std::size_t d) {
  std::vector<Integer> diff(terms.begin(), terms.end());
  for (std::size_t level = 0; level < d; ++level) {
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
  }
  for (std::size_t i = 1; i < diff.size(); ++i)
    if (diff[i] != diff[0]) return false;
  return true;
}

// Newton forward interpolation through terms[0..d] at n = origin, origin+1, ...
inline Polynomial interpolate(std::span<const Integer> terms, std::size_t d, long origin) {
  std::vector<Integer> diff(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(d + 1));
  std::vector<Integer> leading;  // Δ^j f(origin)
  for (std::size_t j = 0; j <= d; ++j) {
    leading.push_back(diff[0]);
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
  }
  Polynomial result{std::vector<Rational>(d + 1, Rational(0))};
  std::vector<Rational> basis{Rational(1)};  // binomial(n - origin, j) in powers of n
  for (std::size_t j = 0; j <= d; ++j) {
    for (std::size_t c = 0; c < basis.size(); ++c) result.coefficients[c] += basis[c] * Rational(leading[j]);
    // basis *= (n - origin - j) / (j + 1)
    const Rational root(Integer(origin) + Integer(j));
    std::vector<Rational> next(basis.size() + 1, Rational(0));
    for (std::size_t c = 0; c < basis.size(); ++c) {
      next[c + 1] += basis[c];
      next[c] -= basis[c] * root;
    }
    for (auto& c : next) c /= Rational(Integer(j + 1));
    basis = std::move(next);
  }
  while (result.coefficients.size() > 1 && result.coefficients.back() == 0) result.coefficients.pop_back();
  return result;
}

}  // namespace detail

/// Smallest degree d <= max_degree, then smallest threshold, such that the sequence
/// from the threshold on has constant d-th differences over at least d + 3 terms.
inline std::optional<PolynomialFit> detect_eventual_polynomial(std::span<const Integer> terms, long first_index,
                                                               std::size_t max_degree) {
  if (terms.size() < kMinPolynomialTerms) {
    throw InvalidInput("polynomial detection needs at least " + std::to_string(kMinPolynomialTerms) + " terms");
  }
  for (std::size_t d = 0; d <= max_degree; ++d) {
    if (terms.size() < d + 3) break;
    for (std::size_t start = 0; start + d + 3 <= terms.size(); ++start) {
      const auto tail = terms.subspan(start);
      if (!detail::constant_difference(tail, d)) continue;
      const long threshold = first_index + static_cast<long>(start);
      return PolynomialFit{d, threshold, detail::interpolate(tail, d, threshold), tail.size()};
    }
  }
  return std::nullopt;
}

/// First threshold at which two consecutive terms fix a linear l(n) and the
/// recurrence f(n) = f(n-1) + f(n-2) + l(n) then holds for every later term, with at
/// least five confirmations.
inline std::optional<FibLikeFit> detect_fib_like(std::span<const Integer> terms, long first_index) {
  if (terms.size() < kMinFibLikeTerms) {
    throw InvalidInput("Fibonacci-like detection needs at least " + std::to_string(kMinFibLikeTerms) + " terms");
  }
  auto residual = [&](std::size_t i) { return terms[i] - terms[i - 1] - terms[i - 2]; };
  for (std::size_t i0 = 2; i0 + 1 + kFibLikeConfirmations < terms.size(); ++i0) {
    const long n0 = first_index + static_cast<long>(i0);
    const Integer a = residual(i0 + 1) - residual(i0);
    const Integer b = residual(i0) - a * n0;
    bool holds = true;
    for (std::size_t i = i0 + 2; i < terms.size() && holds; ++i) {
      holds = residual(i) == a * (first_index + static_cast<long>(i)) + b;
    }
    if (holds) return FibLikeFit{a, b, n0, terms.size() - i0 - 2};
  }
  return std::nullopt;
}

/// Zero tail of at least three terms, else lowest-degree eventual polynomial, else
/// Fibonacci-like recurrence, else unclassified.
inline ClassificationReport classify(std::span<const Integer> terms, long first_index,
                                     std::size_t max_degree = kDefaultMaxDegree) {
  if (terms.size() < kMinPolynomialTerms) {
    throw InvalidInput("classification needs at least " + std::to_string(kMinPolynomialTerms) + " terms");
  }
  ClassificationReport report;

  std::size_t zeros = 0;
  while (zeros < terms.size() && terms[terms.size() - 1 - zeros] == 0) ++zeros;
  if (zeros >= kZeroTail) {
    report.verdict = Verdict::eventually_zero;
    report.threshold = first_index + static_cast<long>(terms.size() - zeros);
    report.evidence = zeros;
    return report;
  }
  if (auto poly = detect_eventual_polynomial(terms, first_index, max_degree)) {
    report.verdict = Verdict::eventual_polynomial;
    report.threshold = poly->threshold;
    report.evidence = poly->evidence;
    report.polynomial = std::move(poly);
    return report;
  }
  if (terms.size() >= kMinFibLikeTerms) {
    if (auto fib = detect_fib_like(terms, first_index)) {
      report.verdict = Verdict::fib_like;
      report.threshold = fib->threshold;
      report.evidence = fib->evidence;
      report.fib_like = std::move(fib);
      return report;
    }
  }
  return report;
}

}  // namespace patavoid
