#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "core.hpp"

namespace vdw {

// A monochromatic progression {start, start + gap, ..., start + (length-1)*gap}
// in `color`, with length = k[color]. Positions are 1-based.
struct Violation {
  Color color = 0;
  std::size_t start = 0;
  std::size_t gap = 0;
  std::size_t length = 0;

  std::size_t end() const noexcept { return start + (length - 1) * gap; }

  friend bool operator==(const Violation&, const Violation&) = default;
};

inline std::string describe(const Violation& v) {
  return "color " + std::to_string(v.color) + ", start " + std::to_string(v.start) + ", gap " +
         std::to_string(v.gap) + ", length " + std::to_string(v.length);
}

namespace detail {

inline void require_checkable(const Instance& inst) {
  for (std::size_t i = 0; i < inst.r(); ++i) {
    if (inst.k(i) < 2)
      throw invalid_instance("color " + std::to_string(i) +
                             " has k = 1; classify the instance with validate_instance first");
  }
}

inline void require_in_range(Color x, const Instance& inst) {
  if (x >= inst.r())
    throw color_out_of_range("color " + std::to_string(x) + " is outside [0, " +
                             std::to_string(inst.r() - 1) + "]");
}

// Progression of color c[end-1] and the given gap ending at 1-based `end`?
inline bool progression_ends_at(const Coloring& c, std::size_t end, std::size_t gap, int k) {
  const Color x = c[end - 1];
  for (int t = 1; t < k; ++t) {
    if (c[end - 1 - static_cast<std::size_t>(t) * gap] != x) return false;
  }
  return true;
}

}  // namespace detail

// Reports the violation with the smallest end position; ties go to the smaller
// gap. (All progressions ending at one position share its color.)
inline std::optional<Violation> find_violation(const Coloring& c, const Instance& inst) {
  detail::require_checkable(inst);
  for (Color x : c) detail::require_in_range(x, inst);
  for (std::size_t end = 1; end <= c.size(); ++end) {
    const Color x = c[end - 1];
    const int k = inst.k(x);
    const std::size_t span = static_cast<std::size_t>(k - 1);
    for (std::size_t gap = 1; span * gap < end; ++gap) {
      if (detail::progression_ends_at(c, end, gap, k))
        return Violation{x, end - span * gap, gap, static_cast<std::size_t>(k)};
    }
  }
  return std::nullopt;
}

inline bool is_valid(const Coloring& c, const Instance& inst) {
  return !find_violation(c, inst).has_value();
}

// Whether appending `new_color` at position n + 1 keeps a valid coloring valid.
// Only progressions ending at n + 1 need checking; gaps run from largest down.
inline bool extension_valid(const Coloring& c, const Instance& inst, Color new_color) {
  detail::require_checkable(inst);
  detail::require_in_range(new_color, inst);
  const std::size_t n = c.size();
  const int k = inst.k(new_color);
  const std::size_t span = static_cast<std::size_t>(k - 1);
  for (std::size_t gap = n / span; gap >= 1; --gap) {
    bool all = true;
    for (std::size_t t = 1; t <= span; ++t) {
      if (c[n - t * gap] != new_color) {
        all = false;
        break;
      }
    }
    if (all) return false;
  }
  return true;
}

}  // namespace vdw
