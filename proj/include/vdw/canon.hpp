#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "core.hpp"

namespace vdw {

// Color renamings that preserve validity: permutations mapping every color to
// one with the same k. Stored as its orbits ("classes") instead of an explicit
// permutation list, since the group is the direct product of the symmetric
// groups on each class.
struct SymmetryGroup {
  std::vector<std::vector<Color>> classes;  // each ascending; ordered by first member
  std::vector<std::size_t> class_of;        // color -> index into classes
  bool include_reversal = true;

  std::size_t r() const noexcept { return class_of.size(); }

  // Number of color permutations (reversal not counted).
  std::uint64_t order() const {
    std::uint64_t n = 1;
    for (const auto& cls : classes)
      for (std::uint64_t i = 2; i <= cls.size(); ++i) n *= i;
    return n;
  }

  // Calls fn(perm) for every group element, perm[color] = image of color.
  void for_each_permutation(const std::function<void(std::span<const Color>)>& fn) const {
    std::vector<std::vector<Color>> images = classes;
    std::vector<Color> perm(r());
    std::function<void(std::size_t)> rec = [&](std::size_t ci) {
      if (ci == classes.size()) {
        fn(perm);
        return;
      }
      std::sort(images[ci].begin(), images[ci].end());
      do {
        for (std::size_t i = 0; i < classes[ci].size(); ++i) perm[classes[ci][i]] = images[ci][i];
        rec(ci + 1);
      } while (std::next_permutation(images[ci].begin(), images[ci].end()));
    };
    rec(0);
  }
};

inline SymmetryGroup symmetry_group(const Instance& inst, bool include_reversal = true) {
  SymmetryGroup g;
  g.include_reversal = include_reversal;
  g.class_of.assign(inst.r(), 0);
  std::vector<bool> seen(inst.r(), false);
  for (std::size_t i = 0; i < inst.r(); ++i) {
    if (seen[i]) continue;
    std::vector<Color> cls;
    for (std::size_t j = i; j < inst.r(); ++j) {
      if (!seen[j] && inst.k(j) == inst.k(i)) {
        seen[j] = true;
        g.class_of[j] = g.classes.size();
        cls.push_back(static_cast<Color>(j));
      }
    }
    g.classes.push_back(std::move(cls));
  }
  return g;
}

inline Coloring apply_permutation(const Coloring& c, std::span<const Color> perm) {
  std::vector<Color> out;
  out.reserve(c.size());
  for (Color x : c) out.push_back(perm[x]);
  return Coloring(std::move(out));
}

namespace detail {

// Least relabeling of `seq` under color renaming: scanning left to right, the
// first occurrence of a color takes the smallest unused member of its class.
template <typename It>
std::vector<Color> least_relabeling(It first, It last, const SymmetryGroup& g) {
  constexpr std::size_t unmapped = static_cast<std::size_t>(-1);
  std::vector<std::size_t> map(g.r(), unmapped);
  std::vector<std::size_t> next(g.classes.size(), 0);
  std::vector<Color> out;
  out.reserve(static_cast<std::size_t>(std::distance(first, last)));
  for (; first != last; ++first) {
    const Color x = *first;
    if (x >= g.r()) throw color_out_of_range("color " + std::to_string(x) + " outside the group");
    if (map[x] == unmapped) {
      const std::size_t ci = g.class_of[x];
      map[x] = g.classes[ci][next[ci]++];
    }
    out.push_back(static_cast<Color>(map[x]));
  }
  return out;
}

}  // namespace detail

// Lexicographically least member of the orbit of `c`.
inline Coloring canonical_form(const Coloring& c, const SymmetryGroup& g) {
  std::vector<Color> best = detail::least_relabeling(c.begin(), c.end(), g);
  if (g.include_reversal) {
    std::vector<Color> rev = detail::least_relabeling(c.colors().rbegin(), c.colors().rend(), g);
    if (rev < best) best = std::move(rev);
  }
  return Coloring(std::move(best));
}

inline Coloring canonical_form(const Coloring& c, const Instance& inst, bool include_reversal = true) {
  return canonical_form(c, symmetry_group(inst, include_reversal));
}

inline bool equivalent(const Coloring& a, const Coloring& b, const SymmetryGroup& g) {
  return a.size() == b.size() && canonical_form(a, g) == canonical_form(b, g);
}

// Canonical forms of `cs`, duplicates removed, sorted.
inline std::vector<Coloring> dedup(std::span<const Coloring> cs, const SymmetryGroup& g) {
  std::vector<Coloring> out;
  out.reserve(cs.size());
  for (const Coloring& c : cs) out.push_back(canonical_form(c, g));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace vdw
