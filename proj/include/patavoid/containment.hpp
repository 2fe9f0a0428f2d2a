#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "patavoid/permutation.hpp"

namespace patavoid {

/// Precomputed order constraints for matching one classical pattern.
///
/// When the pattern is matched left to right, entry t must lie strictly between the
/// text values already matched to `below[t]` and `above[t]`: the earlier pattern
/// entries holding the nearest smaller and nearest larger value (or -1 when absent).
/// A matched prefix satisfying these bounds is order-isomorphic to the pattern prefix.
class PatternMatcher {
 public:
  PatternMatcher() = default;

  explicit PatternMatcher(const Permutation& pattern) : pattern_(pattern) {
    const auto k = pattern.size();
    below_.assign(k, -1);
    above_.assign(k, -1);
    for (std::size_t t = 0; t < k; ++t) {
      for (std::size_t s = 0; s < t; ++s) {
        if (pattern[s] < pattern[t] && (below_[t] < 0 || pattern[s] > pattern[below_[t]])) below_[t] = int(s);
        if (pattern[s] > pattern[t] && (above_[t] < 0 || pattern[s] < pattern[above_[t]])) above_[t] = int(s);
      }
    }
  }

  const Permutation& pattern() const noexcept { return pattern_; }
  std::size_t size() const noexcept { return pattern_.size(); }

  /// True iff `text` (any word of distinct values) has a subsequence order-isomorphic
  /// to the pattern.
  template <typename Value>
  bool occurs_in(std::span<const Value> text) const {
    if (size() == 0) return true;
    if (text.size() < size()) return false;
    int matched[Permutation::kMaxLength];
    std::fill_n(matched, size(), 0);
    return extend(text, 0, 0, matched);
  }

  /// True iff some occurrence places exactly `left` pattern entries at text positions
  /// before `gap` and the rest at positions >= `gap`.
  template <typename Value>
  bool occurs_split_at(std::span<const Value> text, std::size_t gap, std::size_t left) const {
    if (size() == 0) return true;
    if (text.size() < size() || gap < left || text.size() - gap < size() - left) return false;
    int matched[Permutation::kMaxLength];
    std::fill_n(matched, size(), 0);
    return extend_split(text, gap, left, 0, 0, matched);
  }

 private:
  template <typename Value>
  bool fits(std::span<const Value> text, std::size_t t, Value v, const int* matched) const {
    return (below_[t] < 0 || v > text[matched[below_[t]]]) && (above_[t] < 0 || v < text[matched[above_[t]]]);
  }

  template <typename Value>
  bool extend(std::span<const Value> text, std::size_t t, std::size_t from, int* matched) const {
    const std::size_t k = size();
    const std::size_t last = text.size() - (k - t);
    for (std::size_t j = from; j <= last; ++j) {
      if (!fits(text, t, text[j], matched)) continue;
      matched[t] = int(j);
      if (t + 1 == k || extend(text, t + 1, j + 1, matched)) return true;
    }
    return false;
  }

  template <typename Value>
  bool extend_split(std::span<const Value> text, std::size_t gap, std::size_t left, std::size_t t,
                    std::size_t from, int* matched) const {
    const std::size_t k = size();
    std::size_t lo = from;
    std::size_t hi;
    if (t < left) {
      hi = gap - (left - t);
    } else {
      lo = std::max(lo, gap);
      hi = text.size() - (k - t);
    }
    for (std::size_t j = lo; j <= hi && j < text.size(); ++j) {
      if (!fits(text, t, text[j], matched)) continue;
      matched[t] = int(j);
      if (t + 1 == k || extend_split(text, gap, left, t + 1, j + 1, matched)) return true;
    }
    return false;
  }

  Permutation pattern_;
  std::vector<int> below_;
  std::vector<int> above_;
};

/// True iff `pi` contains a copy of `sigma`.
inline bool contains(const Permutation& pi, const Permutation& sigma) {
  return PatternMatcher(sigma).occurs_in(pi.values());
}

/// Detects occurrences that use a newly inserted maximum.
///
/// Any such occurrence maps the new maximum to the pattern's largest entry, so it
/// exists iff the pattern with its maximum deleted occurs in the old permutation with
/// exactly as many entries left of the insertion gap as precede the maximum in the
/// pattern.
class MaxInsertionMatcher {
 public:
  explicit MaxInsertionMatcher(const Permutation& pattern) {
    std::vector<int> rest;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      if (static_cast<std::size_t>(pattern[i]) == pattern.size()) {
        left_ = i;
      } else {
        rest.push_back(pattern[i]);
      }
    }
    degenerate_ = pattern.empty();
    reduced_ = PatternMatcher(Permutation(rest));
  }

  /// `base` is the permutation before inserting its new maximum at `gap` (0..n).
  bool creates_occurrence(std::span<const Permutation::value_type> base, std::size_t gap) const {
    if (degenerate_) return true;
    return reduced_.occurs_split_at(base, gap, left_);
  }

 private:
  PatternMatcher reduced_;
  std::size_t left_ = 0;
  bool degenerate_ = false;
};

}  // namespace patavoid
