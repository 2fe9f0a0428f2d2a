#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "patavoid/containment.hpp"
#include "patavoid/permutation.hpp"

namespace patavoid {

/// A finite set of patterns, kept sorted (length-lexicographic) and deduplicated.
class PatternSet {
 public:
  PatternSet() = default;
  PatternSet(std::initializer_list<Permutation> patterns) : PatternSet(std::vector<Permutation>(patterns)) {}
  explicit PatternSet(std::vector<Permutation> patterns) : patterns_(std::move(patterns)) { normalize(); }

  std::size_t size() const noexcept { return patterns_.size(); }
  bool empty() const noexcept { return patterns_.empty(); }
  const Permutation& operator[](std::size_t i) const noexcept { return patterns_[i]; }
  auto begin() const noexcept { return patterns_.begin(); }
  auto end() const noexcept { return patterns_.end(); }
  const std::vector<Permutation>& patterns() const noexcept { return patterns_; }

  std::size_t max_length() const noexcept {
    std::size_t l = 0;
    for (const auto& p : patterns_) l = std::max(l, p.size());
    return l;
  }

  bool is_subset_of(const PatternSet& other) const {
    return std::includes(other.begin(), other.end(), begin(), end());
  }

  friend bool operator==(const PatternSet&, const PatternSet&) = default;

  // Set size first, then the sorted pattern lists lexicographically.
  friend std::strong_ordering operator<=>(const PatternSet& a, const PatternSet& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }

 private:
  void normalize() {
    std::sort(patterns_.begin(), patterns_.end());
    patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
  }

  std::vector<Permutation> patterns_;
};

inline bool avoids(const Permutation& pi, const PatternSet& sigma) {
  return std::none_of(sigma.begin(), sigma.end(), [&](const Permutation& s) { return contains(pi, s); });
}

inline std::string to_string(const PatternSet& set) {
  std::string out;
  const bool long_form = set.max_length() > 9;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out.push_back(long_form ? ';' : ',');
    out += to_string(set[i]);
  }
  return out;
}

/// Parses a pattern list. Patterns are separated by ',' (e.g. "1234,1243"); when any
/// pattern needs the comma-separated long form, separate patterns with ';' instead
/// ("10,9,8,7,6,5,4,3,2,1;123").
inline PatternSet parse_pattern_set(std::string_view text) {
  const char sep = text.find(';') != std::string_view::npos ? ';' : ',';
  std::vector<Permutation> patterns;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto stop = std::min(text.find(sep, start), text.size());
    const auto token = text.substr(start, stop - start);
    if (token.empty() && text.size() > 0) throw ParseError("empty pattern", std::string(token), start);
    if (!token.empty()) patterns.push_back(parse_permutation(token, start));
    start = stop + 1;
  }
  return PatternSet(std::move(patterns));
}

}  // namespace patavoid
