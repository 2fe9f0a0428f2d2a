#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "patavoid/avoiders.hpp"
#include "patavoid/error.hpp"
#include "patavoid/integer.hpp"
#include "patavoid/parallel.hpp"
#include "patavoid/pattern_set.hpp"
#include "patavoid/permutation.hpp"
#include "patavoid/sequence_analysis.hpp"
#include "patavoid/symmetry.hpp"

namespace patavoid {

/// All permutations of length n in lexicographic order.
inline std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<int> values(n);
  std::iota(values.begin(), values.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(values);
  } while (std::next_permutation(values.begin(), values.end()));
  return out;
}

inline Integer binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  Integer r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

inline Integer factorial(std::size_t n) {
  Integer r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

struct SymmetryClass {
  PatternSet canonical;
  std::size_t orbit_size = 0;
  friend bool operator==(const SymmetryClass&, const SymmetryClass&) = default;
};

inline constexpr std::size_t kDefaultSubsetBudget = 50'000'000;

/// One entry per symmetry class of `num_patterns`-subsets of S_{pattern_length},
/// sorted by canonical form. Orbit sizes sum to C(pattern_length!, num_patterns).
inline std::vector<SymmetryClass> enumerate_symmetry_classes(std::size_t num_patterns, std::size_t pattern_length,
                                                             std::size_t subset_budget = kDefaultSubsetBudget) {
  if (pattern_length > 8) throw InvalidInput("pattern length above 8 is not supported by the class enumeration");
  const auto pool = all_permutations(pattern_length);
  if (num_patterns > pool.size()) return {};
  if (binomial(pool.size(), num_patterns) > subset_budget) throw BudgetExceeded(subset_budget);

  std::map<PatternSet, std::size_t> orbits;
  std::vector<std::size_t> pick(num_patterns);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  std::vector<Permutation> chosen(num_patterns);
  while (true) {
    for (std::size_t i = 0; i < num_patterns; ++i) chosen[i] = pool[pick[i]];
    ++orbits[canonicalize(PatternSet(chosen))];
    // next combination in lexicographic order
    std::size_t i = num_patterns;
    while (i > 0 && pick[i - 1] == pool.size() - num_patterns + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < num_patterns; ++j) pick[j] = pick[j - 1] + 1;
  }

  std::vector<SymmetryClass> out;
  out.reserve(orbits.size());
  for (auto& [set, size] : orbits) out.push_back({set, size});
  return out;
}

/// One surveyed class: counts for n = 1..N and their classification, or the error
/// that prevented counting.
struct SurveyRecord {
  PatternSet canonical;
  std::size_t orbit_size = 0;
  std::size_t max_n = 0;
  std::vector<Integer> counts;  // n = 1..max_n; empty when `error` is set
  std::optional<ClassificationReport> report;
  std::optional<std::string> error;
};

struct SurveyOptions {
  std::size_t max_n = 10;
  std::size_t workers = 1;
  std::size_t max_degree = kDefaultMaxDegree;
  CountOptions count;
};

inline SurveyRecord survey_class(const SymmetryClass& cls, const SurveyOptions& options) {
  SurveyRecord record{cls.canonical, cls.orbit_size, options.max_n, {}, std::nullopt, std::nullopt};
  try {
    record.counts = count_avoiders(cls.canonical, options.max_n, options.count).from_one();
    if (record.counts.size() >= kMinPolynomialTerms) record.report = classify(record.counts, 1, options.max_degree);
  } catch (const BudgetExceeded& e) {
    record.counts.clear();
    record.error = e.what();
  }
  return record;
}

/// Counts every class in parallel and streams records to `sink` in input order.
/// Classes listed in `skip` (already surveyed) are left out.
inline void run_survey(const std::vector<SymmetryClass>& classes, const SurveyOptions& options,
                       const std::function<void(const SurveyRecord&)>& sink, const std::set<PatternSet>& skip = {}) {
  std::vector<const SymmetryClass*> todo;
  for (const auto& c : classes)
    if (!skip.contains(c.canonical)) todo.push_back(&c);
  ordered_parallel_map(
      todo.size(), options.workers, [&](std::size_t i) { return survey_class(*todo[i], options); },
      [&](std::size_t, SurveyRecord&& r) { sink(r); });
}

inline std::vector<SurveyRecord> run_survey(const std::vector<SymmetryClass>& classes, const SurveyOptions& options) {
  std::vector<SurveyRecord> out;
  run_survey(classes, options, [&](const SurveyRecord& r) { out.push_back(r); });
  return out;
}

// ---------------------------------------------------------------------------
// Wilf fingerprints

using WilfFingerprint = std::vector<Integer>;

/// Records clustered by their first `horizon` counts. Equal fingerprints are
/// necessary for Wilf equivalence, so `distinct()` is a lower bound on the number of
/// Wilf classes among the surveyed records.
struct WilfReport {
  std::size_t horizon = 0;
  std::map<WilfFingerprint, std::vector<PatternSet>> clusters;
  std::vector<PatternSet> failed;  // records without counts (budget)

  std::size_t distinct() const noexcept { return clusters.size(); }
};

/// `horizon` = 0 uses each record's full length; records shorter than the horizon
/// count as failed.
inline WilfReport wilf_survey(const std::vector<SurveyRecord>& records, std::size_t horizon = 0) {
  WilfReport report;
  report.horizon = horizon;
  for (const auto& r : records) {
    const auto h = horizon ? horizon : r.counts.size();
    if (r.error || r.counts.size() < h || h == 0) {
      report.failed.push_back(r.canonical);
      continue;
    }
    if (!report.horizon) report.horizon = h;
    report.clusters[WilfFingerprint(r.counts.begin(), r.counts.begin() + static_cast<std::ptrdiff_t>(h))].push_back(
        r.canonical);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Polynomial scan

struct PolynomialClass {
  PatternSet canonical;
  std::size_t degree = 0;
  long threshold = 1;
  friend bool operator==(const PolynomialClass&, const PolynomialClass&) = default;
};

struct PolynomialScan {
  // Classes whose counts agree with one polynomial over the whole horizon n = 1..N.
  std::vector<PolynomialClass> flagged;
  // Classes with an eventual polynomial at any threshold (a superset of `flagged`).
  std::vector<PolynomialClass> eventual;
};

/// Scans records (counts n = 1..N) for polynomial enumerations of degree
/// 1..max_degree. Both lists are sorted by degree, then canonical set.
inline PolynomialScan polynomial_scan(const std::vector<SurveyRecord>& records, std::size_t max_degree) {
  PolynomialScan scan;
  for (const auto& r : records) {
    if (r.error) continue;
    if (r.counts.size() < max_degree + 3) {
      throw InvalidInput("polynomial scan needs at least max_degree + 3 counted terms");
    }
    const auto fit = detect_eventual_polynomial(r.counts, 1, max_degree);
    if (!fit || fit->degree < 1) continue;
    PolynomialClass entry{r.canonical, fit->degree, fit->threshold};
    if (fit->threshold == 1) scan.flagged.push_back(entry);
    scan.eventual.push_back(std::move(entry));
  }
  auto order = [](const PolynomialClass& a, const PolynomialClass& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.canonical < b.canonical;
  };
  std::sort(scan.flagged.begin(), scan.flagged.end(), order);
  std::sort(scan.eventual.begin(), scan.eventual.end(), order);
  return scan;
}

}  // namespace patavoid
