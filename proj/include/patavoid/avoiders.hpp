#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "patavoid/containment.hpp"
#include "patavoid/error.hpp"
#include "patavoid/integer.hpp"
#include "patavoid/pattern_set.hpp"
#include "patavoid/permutation.hpp"

namespace patavoid {

inline constexpr std::size_t kDefaultNodeBudget = 100'000'000;

struct CountOptions {
  std::size_t node_budget = kDefaultNodeBudget;
  // Re-test every child against the whole pattern set and every gap, instead of
  // only occurrences through the new maximum at inherited active gaps.
  bool full_recheck = false;
};

/// |Av_n(patterns)| for n = 0..max_n.
struct CountSequence {
  PatternSet patterns;
  std::vector<Integer> counts;

  std::size_t max_n() const noexcept { return counts.empty() ? 0 : counts.size() - 1; }

  // counts[1..N], the convention used for tables and fingerprints.
  std::vector<Integer> from_one() const {
    return counts.size() > 1 ? std::vector<Integer>(counts.begin() + 1, counts.end()) : std::vector<Integer>{};
  }

  friend bool operator==(const CountSequence&, const CountSequence&) = default;
};

namespace detail {

/// Depth-first generating tree of a pattern class.
///
/// Depth-n nodes are exactly Av_n(patterns). Children insert the value n+1 into a
/// gap of the parent; deleting the maximum of an avoider leaves an avoider, so no
/// class member is missed. A gap that produced an occurrence in the parent still
/// produces one in every descendant (the occurrence just uses the larger new
/// maximum), so each child only tests the gaps its parent accepted, with the
/// parent's insertion gap split in two.
class InsertionTree {
 public:
  using Value = Permutation::value_type;
  using LeafVisitor = std::function<void(std::span<const Value>)>;

  InsertionTree(const PatternSet& patterns, std::size_t max_n, CountOptions options)
      : max_n_(max_n), options_(options), level_counts_(max_n + 1, 0) {
    if (max_n > Permutation::kMaxLength) throw InvalidInput("max_n exceeds supported permutation length");
    for (const auto& p : patterns) {
      if (p.empty()) killed_ = true;
      insertion_matchers_.emplace_back(p);
      full_matchers_.emplace_back(p);
    }
  }

  // Visits leaves at depth max_n; counts every level regardless.
  void run(const LeafVisitor& leaf = {}) {
    if (killed_) return;
    leaf_ = leaf;
    level_counts_[0] = 1;
    perms_.assign(max_n_ + 2, {});
    gaps_.assign(max_n_ + 2, {});
    accepted_.assign(max_n_ + 2, {});
    if (max_n_ == 0) {
      if (leaf_) leaf_({});
      return;
    }
    gaps_[0] = {0};
    expand(0);
  }

  const std::vector<std::uint64_t>& level_counts() const noexcept { return level_counts_; }

 private:
  bool child_ok(std::span<const Value> parent, std::size_t gap) {
    if (options_.full_recheck) {
      auto& child = scratch_;
      child.assign(parent.begin(), parent.end());
      child.insert(child.begin() + static_cast<std::ptrdiff_t>(gap), static_cast<Value>(parent.size() + 1));
      std::span<const Value> view(child);
      return std::none_of(full_matchers_.begin(), full_matchers_.end(),
                          [&](const PatternMatcher& m) { return m.occurs_in(view); });
    }
    return std::none_of(insertion_matchers_.begin(), insertion_matchers_.end(),
                        [&](const MaxInsertionMatcher& m) { return m.creates_occurrence(parent, gap); });
  }

  static void insert_max(std::span<const Value> parent, std::size_t gap, std::vector<Value>& out) {
    out.resize(parent.size() + 1);
    std::copy(parent.begin(), parent.begin() + static_cast<std::ptrdiff_t>(gap), out.begin());
    out[gap] = static_cast<Value>(parent.size() + 1);
    std::copy(parent.begin() + static_cast<std::ptrdiff_t>(gap), parent.end(),
              out.begin() + static_cast<std::ptrdiff_t>(gap) + 1);
  }

  void expand(std::size_t n) {
    const std::span<const Value> parent(perms_[n]);
    auto& accepted = accepted_[n];
    accepted.clear();
    if (options_.full_recheck) {
      for (std::size_t g = 0; g <= n; ++g)
        if (child_ok(parent, g)) accepted.push_back(static_cast<std::uint8_t>(g));
    } else {
      for (auto g : gaps_[n])
        if (child_ok(parent, g)) accepted.push_back(g);
    }

    level_counts_[n + 1] += accepted.size();
    nodes_ += accepted.size();
    if (nodes_ > options_.node_budget) throw BudgetExceeded(options_.node_budget);

    if (n + 1 == max_n_) {
      if (leaf_) {
        for (auto g : accepted) {
          insert_max(parent, g, perms_[n + 1]);
          leaf_(perms_[n + 1]);
        }
      }
      return;
    }
    for (auto g : accepted) {
      insert_max(parent, g, perms_[n + 1]);
      auto& child_gaps = gaps_[n + 1];
      child_gaps.clear();
      for (auto h : accepted) {
        if (h < g) {
          child_gaps.push_back(h);
        } else if (h == g) {
          child_gaps.push_back(h);
          child_gaps.push_back(static_cast<std::uint8_t>(h + 1));
        } else {
          child_gaps.push_back(static_cast<std::uint8_t>(h + 1));
        }
      }
      expand(n + 1);
    }
  }

  std::size_t max_n_;
  CountOptions options_;
  std::vector<MaxInsertionMatcher> insertion_matchers_;
  std::vector<PatternMatcher> full_matchers_;
  bool killed_ = false;  // the empty pattern occurs everywhere
  std::vector<std::uint64_t> level_counts_;
  std::vector<std::vector<Value>> perms_;
  std::vector<std::vector<std::uint8_t>> gaps_;
  std::vector<std::vector<std::uint8_t>> accepted_;
  std::vector<Value> scratch_;
  std::size_t nodes_ = 0;
  LeafVisitor leaf_;
};

}  // namespace detail

/// Exact |Av_n(patterns)| for n = 0..max_n via the pruned insertion tree.
/// Throws BudgetExceeded when more than `options.node_budget` nodes are generated.
inline CountSequence count_avoiders(const PatternSet& patterns, std::size_t max_n, CountOptions options = {}) {
  detail::InsertionTree tree(patterns, max_n, options);
  tree.run();
  CountSequence seq{patterns, {}};
  for (auto c : tree.level_counts()) seq.counts.emplace_back(c);
  return seq;
}

/// Av_n(patterns) as a sorted list.
inline std::vector<Permutation> enumerate_avoiders(const PatternSet& patterns, std::size_t n,
                                                   CountOptions options = {}) {
  std::vector<Permutation> out;
  detail::InsertionTree tree(patterns, n, options);
  tree.run([&](std::span<const Permutation::value_type> leaf) { out.push_back(Permutation::from_bytes(leaf)); });
  std::sort(out.begin(), out.end());
  return out;
}

inline constexpr std::size_t kNaiveMaxN = 8;

/// Brute-force filter over all of S_n. Reference implementation for tests.
inline CountSequence count_avoiders_naive(const PatternSet& patterns, std::size_t max_n) {
  if (max_n > kNaiveMaxN) {
    throw InvalidInput("naive counting is limited to max_n <= " + std::to_string(kNaiveMaxN));
  }
  CountSequence seq{patterns, {}};
  for (std::size_t n = 0; n <= max_n; ++n) {
    std::vector<int> values(n);
    std::iota(values.begin(), values.end(), 1);
    std::uint64_t count = 0;
    do {
      if (avoids(Permutation(values), patterns)) ++count;
    } while (std::next_permutation(values.begin(), values.end()));
    seq.counts.emplace_back(count);
  }
  return seq;
}

/// Node budget taken from PATAVOID_NODE_BUDGET when set, else the default.
inline std::size_t node_budget_from_env() {
  if (const char* env = std::getenv("PATAVOID_NODE_BUDGET")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw InvalidInput(std::string("invalid PATAVOID_NODE_BUDGET: ") + env);
  }
  return kDefaultNodeBudget;
}

}  // namespace patavoid
