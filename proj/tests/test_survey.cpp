#include <gtest/gtest.h>

#include <random>
#include <set>

#include "patavoid/patavoid.hpp"
#include "patavoid/reproduce.hpp"

using namespace patavoid;

TEST(SymmetryClasses, SmallCases) {
  const auto singles = enumerate_symmetry_classes(1, 3);
  ASSERT_EQ(singles.size(), 2u);
  EXPECT_EQ(singles[0].canonical, parse_pattern_set("123"));
  EXPECT_EQ(singles[0].orbit_size, 2u);
  EXPECT_EQ(singles[1].canonical, parse_pattern_set("132"));
  EXPECT_EQ(singles[1].orbit_size, 4u);

  const auto full = enumerate_symmetry_classes(24, 4);
  ASSERT_EQ(full.size(), 1u);
  EXPECT_EQ(full[0].canonical.size(), 24u);
  EXPECT_EQ(full[0].orbit_size, 1u);

  EXPECT_TRUE(enumerate_symmetry_classes(7, 3).empty());
  EXPECT_THROW(enumerate_symmetry_classes(12, 5), BudgetExceeded);
  EXPECT_THROW(enumerate_symmetry_classes(1, 9), InvalidInput);
}

TEST(SymmetryClasses, OrbitSizesSumToSubsetCount) {
  for (auto [k, len] : {std::pair{2, 3}, {3, 3}, {2, 4}, {3, 4}}) {
    const auto classes = enumerate_symmetry_classes(k, len);
    Integer total = 0;
    for (const auto& c : classes) total += c.orbit_size;
    EXPECT_EQ(total, binomial(factorial(len).convert_to<std::size_t>(), k)) << k << " " << len;
  }
}

TEST(SymmetryClasses, MatchesBruteForceOrbits) {
  // Orbits computed by closing each subset under the three generators.
  const auto pool = all_permutations(3);
  std::set<std::set<PatternSet>> orbits;
  for (unsigned mask = 0; mask < 64; ++mask) {
    if (__builtin_popcount(mask) != 3) continue;
    std::vector<Permutation> chosen;
    for (std::size_t i = 0; i < 6; ++i)
      if (mask >> i & 1) chosen.push_back(pool[i]);
    std::set<PatternSet> orbit{PatternSet(chosen)};
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& s : std::set<PatternSet>(orbit)) {
        for (auto g : {Symmetry::reverse, Symmetry::complement, Symmetry::inverse})
          grew |= orbit.insert(apply(g, s)).second;
      }
    }
    orbits.insert(orbit);
  }
  EXPECT_EQ(enumerate_symmetry_classes(3, 3).size(), orbits.size());
}

TEST(Survey, RecordsAndFingerprints) {
  SurveyOptions options;
  options.max_n = 8;
  const auto classes = enumerate_symmetry_classes(2, 3);
  const auto records = run_survey(classes, options);
  ASSERT_EQ(records.size(), classes.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].canonical, classes[i].canonical);
    EXPECT_EQ(records[i].counts.size(), 8u);
    EXPECT_TRUE(records[i].report);
  }
  const auto wilf = wilf_survey(records);
  EXPECT_EQ(wilf.horizon, 8u);
  EXPECT_LE(wilf.distinct(), records.size());
  std::size_t members = 0;
  for (const auto& [fp, sets] : wilf.clusters) members += sets.size();
  EXPECT_EQ(members, records.size());
  // Shorter horizons can only merge clusters.
  EXPECT_LE(wilf_survey(records, 4).distinct(), wilf.distinct());
  EXPECT_EQ(wilf_survey(records, 9).failed.size(), records.size());
}

TEST(Survey, FingerprintsAreSymmetryConsistent) {
  std::mt19937 rng(50);
  const auto classes = enumerate_symmetry_classes(4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto& cls = classes[rng() % classes.size()];
    const auto g = kAllSymmetries[rng() % 8];
    const auto member = apply(g, cls.canonical);
    EXPECT_EQ(count_avoiders(member, 8).from_one(), count_avoiders(cls.canonical, 8).from_one());
  }
}

TEST(Survey, WorkerCountDoesNotChangeOutput) {
  const auto classes = enumerate_symmetry_classes(3, 4);
  SurveyOptions one, four;
  one.max_n = four.max_n = 7;
  four.workers = 4;
  std::vector<std::string> a, b;
  run_survey(classes, one, [&](const SurveyRecord& r) { a.push_back(to_string(r.canonical) + reproduce::detail::join(r.counts)); });
  run_survey(classes, four, [&](const SurveyRecord& r) { b.push_back(to_string(r.canonical) + reproduce::detail::join(r.counts)); });
  EXPECT_EQ(a, b);
}

TEST(Survey, SkipsAlreadySurveyedClasses) {
  const auto classes = enumerate_symmetry_classes(2, 3);
  std::set<PatternSet> skip{classes[0].canonical, classes[2].canonical};
  SurveyOptions options;
  options.max_n = 6;
  std::vector<PatternSet> seen;
  run_survey(classes, options, [&](const SurveyRecord& r) { seen.push_back(r.canonical); }, skip);
  EXPECT_EQ(seen.size(), classes.size() - 2);
  for (const auto& s : seen) EXPECT_FALSE(skip.contains(s));
}

TEST(Survey, BudgetErrorsAreRecordedPerClass) {
  SurveyOptions options;
  options.max_n = 9;
  options.count.node_budget = 2000;
  const auto records = run_survey(enumerate_symmetry_classes(1, 3), options);
  ASSERT_EQ(records.size(), 2u);
  for (const auto& r : records) {
    EXPECT_TRUE(r.error);
    EXPECT_TRUE(r.counts.empty());
  }
  const auto wilf = wilf_survey(records);
  EXPECT_EQ(wilf.failed.size(), 2u);
  EXPECT_EQ(wilf.distinct(), 0u);
}

TEST(PolynomialScan, FlagsReferenceClasses) {
  const auto& rows = reproduce::reference_classes();
  std::vector<SurveyRecord> records;
  for (const auto& row : rows) {
    const auto set = canonicalize(parse_pattern_set(row.patterns));
    SurveyRecord r{set, orbit_size(set), 10, count_avoiders(set, 10).from_one(), std::nullopt, std::nullopt};
    EXPECT_EQ(r.counts, row.counts) << row.patterns;
    records.push_back(r);
  }
  // A Catalan class is not polynomial and a zero class has no positive degree.
  const auto cat = parse_pattern_set("132");
  records.push_back({cat, 4, 10, count_avoiders(cat, 10).from_one(), std::nullopt, std::nullopt});
  const auto scan = polynomial_scan(records, 7);
  ASSERT_EQ(scan.flagged.size(), rows.size());
  for (const auto& row : rows) {
    const auto set = canonicalize(parse_pattern_set(row.patterns));
    const auto it = std::find_if(scan.flagged.begin(), scan.flagged.end(),
                                 [&](const PolynomialClass& c) { return c.canonical == set; });
    ASSERT_NE(it, scan.flagged.end());
    EXPECT_EQ(it->degree, row.degree);
  }
  EXPECT_TRUE(std::is_sorted(scan.flagged.begin(), scan.flagged.end(),
                             [](const auto& a, const auto& b) { return a.degree < b.degree; }));
  records.back().counts.resize(9);
  EXPECT_THROW(polynomial_scan(records, 7), InvalidInput);
}

TEST(Experiment, Rng) {
  // splitmix64 reference outputs for seed 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafull);
  std::mt19937_64 a(1), b(1);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(uniform_below(a, 24), 24u);
  const auto pool = all_permutations(4);
  const auto s1 = sample_subset(pool, 12, b);
  EXPECT_EQ(s1.size(), 12u);
  EXPECT_THROW(sample_subset(pool, 25, b), InvalidInput);
}

TEST(Experiment, SamplingIsRoughlyUniform) {
  std::mt19937_64 rng(5);
  const auto pool = all_permutations(4);
  std::map<Permutation, int> hits;
  for (int i = 0; i < 24000; ++i)
    for (const auto& p : sample_subset(pool, 3, rng)) ++hits[p];
  ASSERT_EQ(hits.size(), 24u);
  for (const auto& [p, h] : hits) EXPECT_NEAR(h, 3000, 300) << to_string(p);
}

TEST(Experiment, BucketRule) {
  auto poly = [](std::size_t d, long t) {
    ClassificationReport r;
    r.verdict = Verdict::eventual_polynomial;
    r.threshold = t;
    r.polynomial = PolynomialFit{d, t, {}, 0};
    return r;
  };
  EXPECT_EQ(bucket_of(poly(0, 10), 13), Bucket::constant);
  EXPECT_EQ(bucket_of(poly(0, 11), 13), Bucket::non_polynomial);
  EXPECT_EQ(bucket_of(poly(2, 8), 13), Bucket::quadratic);
  EXPECT_EQ(bucket_of(poly(3, 1), 13), Bucket::cubic);
  EXPECT_EQ(bucket_of(poly(5, 1), 13), Bucket::higher_polynomial);
  ClassificationReport zero;
  zero.verdict = Verdict::eventually_zero;
  EXPECT_EQ(bucket_of(zero, 13), Bucket::zero);
  EXPECT_EQ(bucket_of(ClassificationReport{}, 13), Bucket::non_polynomial);
}

TEST(Experiment, AllPatternsKillEverything) {
  ExperimentConfig config;
  config.num_patterns = 24;
  config.max_n = 5;
  config.trials = 10;
  config.seed = 3;
  const auto summary = random_experiment(config);
  EXPECT_EQ(summary.count(Bucket::zero), 10u);
  for (const auto& t : summary.trials) EXPECT_EQ(t.counts, (std::vector<Integer>{1, 2, 6, 0, 0}));
}

TEST(Experiment, Deterministic) {
  ExperimentConfig config;
  config.trials = 60;
  config.max_n = 11;
  config.seed = 1234;
  const auto a = random_experiment(config);
  config.workers = 3;
  const auto b = random_experiment(config);
  ASSERT_EQ(a.trials.size(), b.trials.size());
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    EXPECT_EQ(a.trials[i].patterns, b.trials[i].patterns);
    EXPECT_EQ(a.trials[i].counts, b.trials[i].counts);
    EXPECT_EQ(a.trials[i].bucket, b.trials[i].bucket);
  }
  EXPECT_EQ(a.bucket_counts, b.bucket_counts);
  EXPECT_EQ(a.fib_like, b.fib_like);
  config.seed = 1235;
  const auto c = random_experiment(config);
  EXPECT_NE(a.trials[0].patterns, c.trials[0].patterns);
  std::size_t total = 0;
  for (auto bkt : kAllBuckets) total += a.count(bkt);
  EXPECT_EQ(total, 60u);
  config.trials = 0;
  EXPECT_THROW(random_experiment(config), InvalidInput);
}
