#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patavoid/containment.hpp"
#include "patavoid/error.hpp"
#include "patavoid/integer.hpp"
#include "patavoid/pattern_set.hpp"
#include "patavoid/permutation.hpp"

namespace patavoid {

/// A template (P, B): `order` gives the relative value order of t consecutive blocks
/// and `flexible[i]` says whether block i may have any length (1) or must be a
/// single entry (0).
struct Template {
  Permutation order;
  std::vector<std::uint8_t> flexible;

  Template(Permutation order_, std::vector<std::uint8_t> flexible_)
      : order(std::move(order_)), flexible(std::move(flexible_)) {
    if (order.empty()) throw InvalidInput("template must have length >= 1");
    if (order.size() != flexible.size()) throw InvalidInput("template order and block mask differ in length");
    for (auto b : flexible)
      if (b > 1) throw InvalidInput("template block mask must be binary");
  }

  std::size_t size() const noexcept { return order.size(); }

  std::size_t singleton_count() const noexcept {
    return static_cast<std::size_t>(std::count(flexible.begin(), flexible.end(), std::uint8_t{0}));
  }

  friend bool operator==(const Template&, const Template&) = default;
};

using TemplateSet = std::vector<Template>;

inline std::string to_string(const Template& t) {
  std::string out = to_string(t.order) + ":";
  for (auto b : t.flexible) out.push_back(b ? '1' : '0');
  return out;
}

/// Parses "45312:10101".
inline Template parse_template(std::string_view text, std::size_t offset = 0) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("template needs ORDER:MASK", std::string(text), offset);
  auto order = parse_permutation(text.substr(0, colon), offset);
  std::vector<std::uint8_t> mask;
  for (std::size_t i = colon + 1; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') {
      throw ParseError("template mask must be binary", std::string(text), offset + i);
    }
    mask.push_back(static_cast<std::uint8_t>(text[i] - '0'));
  }
  try {
    return Template(std::move(order), std::move(mask));
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), std::string(text), offset);
  }
}

/// Parses a ','-separated template list such as "14253:10101,15243:10101".
inline TemplateSet parse_template_set(std::string_view text) {
  TemplateSet out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto stop = std::min(text.find(',', start), text.size());
    out.push_back(parse_template(text.substr(start, stop - start), start));
    start = stop + 1;
  }
  return out;
}

/// Equal-length permutations packed contiguously, sorted and unique once finalized.
class PermutationBlock {
 public:
  using Value = Permutation::value_type;

  explicit PermutationBlock(std::size_t length) : length_(length) {}

  std::size_t length() const noexcept { return length_; }
  std::size_t size() const noexcept { return count_; }

  std::span<const Value> operator[](std::size_t i) const noexcept {
    return {data_.data() + i * length_, length_};
  }

  void push_back(std::span<const Value> perm) {
    data_.insert(data_.end(), perm.begin(), perm.end());
    ++count_;
  }

  void sort_unique() {
    std::vector<std::uint32_t> idx(count_);
    std::iota(idx.begin(), idx.end(), 0u);
    auto less = [&](std::uint32_t a, std::uint32_t b) {
      return std::memcmp(data_.data() + a * length_, data_.data() + b * length_, length_) < 0;
    };
    std::sort(idx.begin(), idx.end(), less);
    std::vector<Value> packed;
    packed.reserve(data_.size());
    std::size_t kept = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i > 0 && !less(idx[i - 1], idx[i])) continue;
      packed.insert(packed.end(), data_.begin() + idx[i] * length_, data_.begin() + (idx[i] + 1) * length_);
      ++kept;
    }
    data_ = std::move(packed);
    count_ = kept;
  }

  std::vector<Permutation> to_permutations() const {
    std::vector<Permutation> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < count_; ++i) out.push_back(Permutation::from_bytes((*this)[i]));
    return out;
  }

 private:
  std::size_t length_;
  std::size_t count_ = 0;
  std::vector<Value> data_;
};

/// The family S_{n,T} of permutations built from a template set.
///
/// S_0 = {empty}, S_1 = {1}. For n >= 2 a permutation belongs to S_n when, for some
/// template, it splits into consecutive subwords W_1..W_t with value blocks ordered
/// as the template's `order`, singleton subwords where the mask is 0, possibly empty
/// subwords where it is 1, every subword shorter than n, and each nonempty subword
/// (flattened) in the smaller family.
///
/// Levels are memoized. Concurrent calls are safe: readers share the table, and a
/// level computed twice by racing threads is simply discarded by the loser.
class TemplateFamily {
 public:
  using Value = Permutation::value_type;

  explicit TemplateFamily(TemplateSet templates) : templates_(std::move(templates)) {
    if (templates_.empty()) throw InvalidInput("template set must be nonempty");
  }

  const TemplateSet& templates() const noexcept { return templates_; }

  /// Largest number of singleton blocks over the templates.
  std::size_t max_singletons() const noexcept {
    std::size_t k = 0;
    for (const auto& t : templates_) k = std::max(k, t.singleton_count());
    return k;
  }

  std::shared_ptr<const PermutationBlock> level(std::size_t n) {
    if (n > Permutation::kMaxLength) throw InvalidInput("length exceeds supported permutation length");
    {
      std::shared_lock lock(mutex_);
      if (n < levels_.size()) return levels_[n];
    }
    for (std::size_t m = 0; m <= n; ++m) ensure(m);
    std::shared_lock lock(mutex_);
    return levels_[n];
  }

  std::vector<Permutation> generate(std::size_t n) { return level(n)->to_permutations(); }

 private:
  void ensure(std::size_t m) {
    std::vector<std::shared_ptr<const PermutationBlock>> lower;
    {
      std::shared_lock lock(mutex_);
      if (m < levels_.size()) return;
      lower.assign(levels_.begin(), levels_.end());
    }
    auto block = std::make_shared<PermutationBlock>(build(m, lower));
    std::unique_lock lock(mutex_);
    if (m == levels_.size()) levels_.push_back(std::move(block));
  }

  PermutationBlock build(std::size_t n, const std::vector<std::shared_ptr<const PermutationBlock>>& lower) const {
    PermutationBlock out(n);
    if (n <= 1) {
      const Value one[] = {1};
      out.push_back(std::span<const Value>(one, n));
      return out;
    }
    std::vector<Value> buffer(n);
    for (const auto& t : templates_) {
      std::vector<std::size_t> widths(t.size());
      compose(t, n, 0, n, widths, lower, buffer, out);
    }
    out.sort_unique();
    return out;
  }

  // Chooses block widths left to right; `remaining` entries are still unassigned.
  void compose(const Template& t, std::size_t n, std::size_t block, std::size_t remaining,
               std::vector<std::size_t>& widths, const std::vector<std::shared_ptr<const PermutationBlock>>& lower,
               std::vector<Value>& buffer, PermutationBlock& out) const {
    if (block == t.size()) {
      if (remaining == 0) fill(t, widths, lower, buffer, out);
      return;
    }
    if (!t.flexible[block]) {
      if (remaining == 0) return;
      widths[block] = 1;
      compose(t, n, block + 1, remaining - 1, widths, lower, buffer, out);
      return;
    }
    const std::size_t cap = std::min(remaining, n - 1);
    for (std::size_t w = 0; w <= cap; ++w) {
      if (w > 0 && lower[w]->size() == 0) continue;
      widths[block] = w;
      compose(t, n, block + 1, remaining - w, widths, lower, buffer, out);
    }
  }

  // Emits every permutation with the given block widths: the Cartesian product of the
  // smaller levels, each block shifted into its value range.
  void fill(const Template& t, const std::vector<std::size_t>& widths,
            const std::vector<std::shared_ptr<const PermutationBlock>>& lower, std::vector<Value>& buffer,
            PermutationBlock& out) const {
    const std::size_t k = t.size();
    std::vector<std::size_t> start(k), shift(k);
    for (std::size_t i = 0, pos = 0; i < k; ++i) {
      start[i] = pos;
      pos += widths[i];
      shift[i] = 0;
      for (std::size_t j = 0; j < k; ++j)
        if (t.order[j] < t.order[i]) shift[i] += widths[j];
    }
    fill_block(0, widths, start, shift, lower, buffer, out);
  }

  void fill_block(std::size_t i, const std::vector<std::size_t>& widths, const std::vector<std::size_t>& start,
                  const std::vector<std::size_t>& shift,
                  const std::vector<std::shared_ptr<const PermutationBlock>>& lower, std::vector<Value>& buffer,
                  PermutationBlock& out) const {
    if (i == widths.size()) {
      out.push_back(buffer);
      return;
    }
    if (widths[i] == 0) {
      fill_block(i + 1, widths, start, shift, lower, buffer, out);
      return;
    }
    const auto& members = *lower[widths[i]];
    for (std::size_t m = 0; m < members.size(); ++m) {
      const auto word = members[m];
      for (std::size_t j = 0; j < word.size(); ++j) buffer[start[i] + j] = static_cast<Value>(word[j] + shift[i]);
      fill_block(i + 1, widths, start, shift, lower, buffer, out);
    }
  }

  TemplateSet templates_;
  mutable std::shared_mutex mutex_;
  std::vector<std::shared_ptr<const PermutationBlock>> levels_;
};

/// S_{n,T} as a sorted list.
inline std::vector<Permutation> generate_S(const TemplateSet& templates, std::size_t n) {
  return TemplateFamily(templates).generate(n);
}

/// R_{n,T}: the single-template family.
inline std::vector<Permutation> generate_R(const Template& t, std::size_t n) { return generate_S({t}, n); }

// ---------------------------------------------------------------------------
// Certification

/// Length up to which a family must be searched for a pattern of length
/// `pattern_length` when every block mask has at most `singletons` zeros: if no
/// member up to this length contains the pattern, no member of any length does.
inline std::size_t certification_bound(std::size_t pattern_length, std::size_t singletons) {
  if (pattern_length == 0) throw InvalidInput("certification needs nonempty patterns");
  return (pattern_length - 1) * (singletons + 1) + 1;
}

struct Witness {
  std::size_t length;
  Permutation permutation;
  Permutation pattern;
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct Certificate {
  TemplateSet templates;
  PatternSet patterns;
  std::size_t bound = 0;  // for the longest pattern
  bool verified = false;
  std::optional<Witness> witness;
};

/// Searches the family for the patterns up to each pattern's certification bound.
/// `verified` means every member of every length avoids all patterns; otherwise the
/// witness is a shortest member containing one of them.
inline Certificate certify_avoidance(TemplateFamily& family, const PatternSet& patterns) {
  Certificate cert{family.templates(), patterns, 0, true, std::nullopt};
  const std::size_t k = family.max_singletons();
  std::vector<std::size_t> bounds;
  std::vector<PatternMatcher> matchers;
  for (const auto& p : patterns) {
    bounds.push_back(certification_bound(p.size(), k));
    matchers.emplace_back(p);
  }
  if (patterns.empty()) return cert;
  cert.bound = certification_bound(patterns.max_length(), k);
  for (std::size_t m = 0; m <= cert.bound; ++m) {
    const auto level = family.level(m);
    for (std::size_t i = 0; i < level->size(); ++i) {
      const auto perm = (*level)[i];
      for (std::size_t s = 0; s < matchers.size(); ++s) {
        if (m > bounds[s] || !matchers[s].occurs_in(perm)) continue;
        cert.verified = false;
        cert.witness = Witness{m, Permutation::from_bytes(perm), patterns[s]};
        return cert;
      }
    }
  }
  return cert;
}

inline Certificate certify_avoidance(const TemplateSet& templates, const PatternSet& patterns) {
  TemplateFamily family(templates);
  return certify_avoidance(family, patterns);
}

// ---------------------------------------------------------------------------
// Counting recurrences for the two three-free-block families
//
// a_0 = a_1 = 1 and, for n > 1,
//   a_n = weight * sum_{1<=i<j<=n} a_{i-1} a_{j-i-1} a_{n-j},
// where i and j are the positions of the two singleton blocks.

inline std::vector<Integer> three_block_recurrence(std::size_t max_n, unsigned weight) {
  std::vector<Integer> a(max_n + 1);
  for (std::size_t n = 0; n <= max_n; ++n) {
    if (n <= 1) {
      a[n] = 1;
      continue;
    }
    Integer sum = 0;
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) sum += a[i - 1] * a[j - i - 1] * a[n - j];
    a[n] = sum * weight;
  }
  return a;
}

/// Sizes of R_n for the template 45312:10101.
inline std::vector<Integer> single_template_recurrence(std::size_t max_n) { return three_block_recurrence(max_n, 1); }

/// Sizes of S_n for the pair {14253:10101, 15243:10101}.
inline std::vector<Integer> paired_template_recurrence(std::size_t max_n) { return three_block_recurrence(max_n, 2); }

}  // namespace patavoid
