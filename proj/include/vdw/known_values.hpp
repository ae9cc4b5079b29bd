#pragma once

// Known van der Waerden numbers with at least two k_i > 2, grouped into
// regression tiers by how long the search takes.

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "core.hpp"

namespace vdw {

enum class Tier { fast, medium, long_running };

inline std::string_view to_string(Tier t) {
  switch (t) {
    case Tier::fast: return "fast";
    case Tier::medium: return "medium";
    case Tier::long_running: return "long";
  }
  return "?";
}

inline std::optional<Tier> parse_tier(std::string_view s) {
  if (s == "fast") return Tier::fast;
  if (s == "medium") return Tier::medium;
  if (s == "long") return Tier::long_running;
  return std::nullopt;
}

struct KnownValue {
  std::array<int, 5> k;  // trailing zeros unused
  std::size_t w;
  Tier tier;
  bool new_here;  // first computed alongside the certificate listings

  Instance instance() const {
    std::vector<int> ks;
    for (int x : k)
      if (x) ks.push_back(x);
    return Instance(std::move(ks));
  }
};

inline constexpr std::array<KnownValue, 39> known_values{{
    {{3, 3}, 9, Tier::fast, false},
    {{4, 3}, 18, Tier::fast, false},
    {{4, 4}, 35, Tier::medium, false},
    {{5, 3}, 22, Tier::fast, false},
    {{5, 4}, 55, Tier::medium, false},
    {{5, 5}, 178, Tier::long_running, false},
    {{6, 3}, 32, Tier::fast, false},
    {{6, 4}, 73, Tier::long_running, false},
    {{7, 3}, 46, Tier::medium, false},
    {{7, 4}, 109, Tier::long_running, false},
    {{8, 3}, 58, Tier::long_running, false},
    {{9, 3}, 77, Tier::long_running, false},
    {{10, 3}, 97, Tier::long_running, false},
    {{11, 3}, 114, Tier::long_running, true},
    {{12, 3}, 135, Tier::long_running, true},
    {{13, 3}, 160, Tier::long_running, true},
    {{3, 3, 2}, 14, Tier::fast, false},
    {{3, 3, 3}, 27, Tier::fast, false},
    {{4, 3, 2}, 21, Tier::fast, false},
    {{4, 3, 3}, 51, Tier::medium, false},
    {{4, 4, 2}, 40, Tier::medium, false},
    {{4, 4, 3}, 89, Tier::long_running, true},
    {{5, 3, 2}, 32, Tier::fast, false},
    {{5, 3, 3}, 80, Tier::long_running, true},
    {{5, 4, 2}, 71, Tier::long_running, false},
    {{6, 3, 2}, 40, Tier::fast, false},
    {{6, 4, 2}, 83, Tier::medium, true},
    {{7, 3, 2}, 55, Tier::medium, true},
    {{3, 3, 2, 2}, 17, Tier::fast, false},
    {{3, 3, 3, 2}, 40, Tier::medium, false},
    {{3, 3, 3, 3}, 76, Tier::long_running, false},
    {{4, 3, 2, 2}, 25, Tier::fast, false},
    {{4, 3, 3, 2}, 60, Tier::medium, true},
    {{4, 4, 2, 2}, 53, Tier::long_running, false},
    {{5, 3, 2, 2}, 43, Tier::long_running, false},
    {{6, 3, 2, 2}, 48, Tier::medium, true},
    {{7, 3, 2, 2}, 65, Tier::medium, true},
    {{3, 3, 2, 2, 2}, 20, Tier::fast, true},
    {{3, 3, 3, 2, 2}, 41, Tier::medium, true},
}};

// Lookup ignores color order: w is symmetric in the k_i.
inline std::optional<std::size_t> known_value(const Instance& inst) {
  std::vector<int> key(inst.ks().begin(), inst.ks().end());
  std::sort(key.begin(), key.end(), std::greater<>());
  for (const auto& kv : known_values) {
    std::vector<int> ks;
    for (int x : kv.k)
      if (x) ks.push_back(x);
    if (ks == key) return kv.w;
  }
  return std::nullopt;
}

inline std::vector<KnownValue> known_values_in(Tier t) {
  std::vector<KnownValue> out;
  for (const auto& kv : known_values)
    if (kv.tier == t) out.push_back(kv);
  return out;
}

}  // namespace vdw
