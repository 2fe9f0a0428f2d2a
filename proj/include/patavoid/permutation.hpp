#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patavoid/error.hpp"

namespace patavoid {

/// A permutation of {1..n} in one-line notation. n = 0 is allowed.
///
/// Entries are stored as bytes, so lengths are limited to kMaxLength. Ordering is
/// length-lexicographic: shorter permutations sort first, equal lengths compare
/// entry by entry.
class Permutation {
 public:
  using value_type = std::uint8_t;
  static constexpr std::size_t kMaxLength = 255;

  Permutation() = default;

  Permutation(std::initializer_list<int> values) : Permutation(std::vector<int>(values)) {}

  // Validating constructor: values must be exactly {1..n} in some order.
  explicit Permutation(const std::vector<int>& values) {
    if (values.size() > kMaxLength) {
      throw InvalidInput("permutation longer than " + std::to_string(kMaxLength));
    }
    std::vector<bool> seen(values.size() + 1, false);
    values_.reserve(values.size());
    for (int v : values) {
      if (v < 1 || static_cast<std::size_t>(v) > values.size() || seen[v]) {
        throw InvalidInput("not a permutation of 1.." + std::to_string(values.size()));
      }
      seen[v] = true;
      values_.push_back(static_cast<value_type>(v));
    }
  }

  // Trusted construction from raw one-line bytes; the caller guarantees validity.
  static Permutation from_bytes(std::span<const value_type> bytes) {
    Permutation p;
    p.values_.assign(bytes.begin(), bytes.end());
    return p;
  }

  static Permutation identity(std::size_t n) {
    Permutation p;
    p.values_.resize(n);
    std::iota(p.values_.begin(), p.values_.end(), value_type{1});
    return p;
  }

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  int operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const value_type> values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  Permutation inverse() const {
    Permutation r;
    r.values_.resize(size());
    for (std::size_t i = 0; i < size(); ++i) r.values_[values_[i] - 1] = static_cast<value_type>(i + 1);
    return r;
  }

  Permutation reverse() const {
    Permutation r = *this;
    std::reverse(r.values_.begin(), r.values_.end());
    return r;
  }

  Permutation complement() const {
    Permutation r = *this;
    const auto top = static_cast<int>(size()) + 1;
    for (auto& v : r.values_) v = static_cast<value_type>(top - v);
    return r;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.values_.begin(), a.values_.end(),
                                                  b.values_.begin(), b.values_.end());
  }

 private:
  std::vector<value_type> values_;
};

/// Reduces a word of distinct integers to the permutation order-isomorphic to it.
template <typename Int>
Permutation flatten(std::span<const Int> word) {
  std::vector<std::size_t> order(word.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return word[a] < word[b]; });
  std::vector<int> values(word.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    if (rank > 0 && word[order[rank]] == word[order[rank - 1]]) {
      throw InvalidInput("flatten: duplicate entry in word");
    }
    values[order[rank]] = static_cast<int>(rank + 1);
  }
  return Permutation(values);
}

inline Permutation flatten(const std::vector<int>& word) { return flatten(std::span<const int>(word)); }

// ---------------------------------------------------------------------------
// Text format: compact digit strings for n <= 9 ("2314"), comma-separated values
// otherwise ("10,1,2,..."). Parsing accepts either form.

inline std::string to_string(const Permutation& p) {
  std::string out;
  if (p.size() <= 9) {
    for (int v : p) out.push_back(static_cast<char>('0' + v));
    return out;
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(p[i]);
  }
  return out;
}

namespace detail {

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace detail

/// Parses one permutation. `offset` is the position of `text` inside the caller's
/// larger input and only affects error messages.
inline Permutation parse_permutation(std::string_view text, std::size_t offset = 0) {
  std::vector<int> values;
  if (text.find(',') == std::string_view::npos) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (c < '1' || c > '9') {
        throw ParseError("invalid character in permutation", std::string(text), offset + i);
      }
      values.push_back(c - '0');
    }
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto stop = std::min(text.find(',', start), text.size());
      const auto field = text.substr(start, stop - start);
      if (!detail::all_digits(field) || field.size() > 3) {
        throw ParseError("invalid entry in permutation", std::string(field), offset + start);
      }
      values.push_back(std::stoi(std::string(field)));
      start = stop + 1;
    }
  }
  try {
    return Permutation(values);
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), std::string(text), offset);
  }
}

}  // namespace patavoid

template <>
struct std::hash<patavoid::Permutation> {
  std::size_t operator()(const patavoid::Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : p.values()) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};
