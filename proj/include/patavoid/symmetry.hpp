#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "patavoid/pattern_set.hpp"
#include "patavoid/permutation.hpp"

namespace patavoid {

/// The eight symmetries of the permutation diagram, generated by reverse,
/// complement and inverse. Composite names read right to left:
/// `inverse_reverse` means inverse(reverse(pi)).
enum class Symmetry {
  identity,
  reverse,
  complement,
  reverse_complement,
  inverse,
  inverse_reverse,
  inverse_complement,
  inverse_reverse_complement,
};

inline constexpr std::array<Symmetry, 8> kAllSymmetries = {
    Symmetry::identity,           Symmetry::reverse,         Symmetry::complement,
    Symmetry::reverse_complement, Symmetry::inverse,         Symmetry::inverse_reverse,
    Symmetry::inverse_complement, Symmetry::inverse_reverse_complement,
};

inline constexpr std::string_view name(Symmetry g) {
  constexpr std::array<std::string_view, 8> names = {
      "identity", "reverse",         "complement",         "reverse_complement",
      "inverse",  "inverse_reverse", "inverse_complement", "inverse_reverse_complement",
  };
  return names[static_cast<std::size_t>(g)];
}

namespace detail {

// Each symmetry acts on the centred diagram coordinates (position, value) as a signed
// 2x2 permutation matrix. Reverse negates the position axis, complement the value
// axis, inverse swaps them.
struct SymmetryMatrix {
  int a, b, c, d;  // [[a b] [c d]]
  friend bool operator==(const SymmetryMatrix&, const SymmetryMatrix&) = default;
  SymmetryMatrix operator*(const SymmetryMatrix& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

inline constexpr SymmetryMatrix kIdentityM{1, 0, 0, 1};
inline constexpr SymmetryMatrix kReverseM{-1, 0, 0, 1};
inline constexpr SymmetryMatrix kComplementM{1, 0, 0, -1};
inline constexpr SymmetryMatrix kInverseM{0, 1, 1, 0};

inline SymmetryMatrix matrix(Symmetry g) {
  switch (g) {
    case Symmetry::identity: return kIdentityM;
    case Symmetry::reverse: return kReverseM;
    case Symmetry::complement: return kComplementM;
    case Symmetry::reverse_complement: return kReverseM * kComplementM;
    case Symmetry::inverse: return kInverseM;
    case Symmetry::inverse_reverse: return kInverseM * kReverseM;
    case Symmetry::inverse_complement: return kInverseM * kComplementM;
    case Symmetry::inverse_reverse_complement: return kInverseM * kReverseM * kComplementM;
  }
  return kIdentityM;
}

}  // namespace detail

/// The group element equal to `g` applied after `h`.
inline Symmetry compose(Symmetry g, Symmetry h) {
  const auto m = detail::matrix(g) * detail::matrix(h);
  for (auto k : kAllSymmetries) {
    if (detail::matrix(k) == m) return k;
  }
  return Symmetry::identity;  // unreachable: the group is closed
}

inline Permutation apply(Symmetry g, const Permutation& pi) {
  switch (g) {
    case Symmetry::identity: return pi;
    case Symmetry::reverse: return pi.reverse();
    case Symmetry::complement: return pi.complement();
    case Symmetry::reverse_complement: return pi.complement().reverse();
    case Symmetry::inverse: return pi.inverse();
    case Symmetry::inverse_reverse: return pi.reverse().inverse();
    case Symmetry::inverse_complement: return pi.complement().inverse();
    case Symmetry::inverse_reverse_complement: return pi.complement().reverse().inverse();
  }
  return pi;
}

inline PatternSet apply(Symmetry g, const PatternSet& set) {
  std::vector<Permutation> image;
  image.reserve(set.size());
  for (const auto& p : set) image.push_back(apply(g, p));
  return PatternSet(std::move(image));
}

/// Smallest of the eight images of `set`. Two sets are trivially Wilf-equivalent
/// through a symmetry iff their canonical forms coincide.
inline PatternSet canonicalize(const PatternSet& set) {
  PatternSet best = set;
  for (auto g : kAllSymmetries) {
    auto image = apply(g, set);
    if (image < best) best = std::move(image);
  }
  return best;
}

/// Number of distinct images of `set` under the group.
inline std::size_t orbit_size(const PatternSet& set) {
  std::vector<PatternSet> images;
  for (auto g : kAllSymmetries) images.push_back(apply(g, set));
  std::sort(images.begin(), images.end());
  return static_cast<std::size_t>(std::unique(images.begin(), images.end()) - images.begin());
}

}  // namespace patavoid
