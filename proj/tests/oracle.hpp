#pragma once

// Slow, obviously-correct reference implementations the tests compare the
// library against. Nothing here calls into the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Seq = std::vector<int>;

// Does `c` contain a monochromatic k[color]-term progression? Tries every
// start and gap directly.
inline bool has_progression(const Seq& c, const std::vector<int>& k) {
  const int n = static_cast<int>(c.size());
  for (int a = 0; a < n; ++a) {
    const int len = k[c[a]];
    if (len <= 1) return true;
    for (int d = 1; a + (len - 1) * d < n; ++d) {
      bool mono = true;
      for (int t = 1; t < len && mono; ++t) mono = c[a + t * d] == c[a];
      if (mono) return true;
    }
  }
  return false;
}

inline bool valid(const Seq& c, const std::vector<int>& k) { return !has_progression(c, k); }

// Every sequence of length n over r colors, in lexicographic order.
inline void for_each_sequence(int r, int n, const std::function<void(const Seq&)>& fn) {
  Seq c(static_cast<std::size_t>(n), 0);
  for (;;) {
    fn(c);
    int i = n - 1;
    while (i >= 0 && c[i] == r - 1) c[i--] = 0;
    if (i < 0) return;
    ++c[i];
  }
}

// All valid colorings of [1, n].
inline std::vector<Seq> valid_colorings(const std::vector<int>& k, int n) {
  std::vector<Seq> out;
  for_each_sequence(static_cast<int>(k.size()), n, [&](const Seq& c) {
    if (valid(c, k)) out.push_back(c);
  });
  return out;
}

// 1 + the longest n with a valid coloring of [1, n], found by trying
// n = 0, 1, 2, ... over all r^n sequences.
inline int w(const std::vector<int>& k) {
  int n = 0;
  while (!valid_colorings(k, n + 1).empty()) ++n;
  return n + 1;
}

// Permutations of the colors that preserve k, by listing all r! of them.
inline std::vector<Seq> k_preserving_permutations(const std::vector<int>& k) {
  Seq p(k.size());
  std::iota(p.begin(), p.end(), 0);
  std::vector<Seq> out;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < k.size() && ok; ++i) ok = k[p[i]] == k[i];
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Least image of c under the given permutations, optionally also reversed.
inline Seq least_image(const Seq& c, const std::vector<Seq>& perms, bool with_reversal) {
  std::optional<Seq> best;
  for (const auto& p : perms) {
    for (int rev = 0; rev <= (with_reversal ? 1 : 0); ++rev) {
      Seq img(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) img[i] = p[c[rev ? c.size() - 1 - i : i]];
      if (!best || img < *best) best = img;
    }
  }
  return *best;
}

// Orbit representatives of the given colorings, sorted.
inline std::vector<Seq> classes(const std::vector<Seq>& cs, const std::vector<int>& k, bool with_reversal) {
  const auto perms = k_preserving_permutations(k);
  std::set<Seq> reps;
  for (const auto& c : cs) reps.insert(least_image(c, perms, with_reversal));
  return {reps.begin(), reps.end()};
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return b ? gcd(b, a % b) : a; }

// Primorial of r by trial division.
inline std::uint64_t primorial(int r) {
  std::uint64_t p = 1;
  for (int n = 2; n <= r; ++n) {
    bool prime = true;
    for (int d = 2; d * d <= n; ++d) prime &= n % d != 0;
    if (prime) p *= static_cast<std::uint64_t>(n);
  }
  return p;
}

// Longest run of integers in [1, 2 * #r] sharing a factor with #r, by gcd.
inline std::uint64_t jacobsthal_run(int r) {
  const std::uint64_t P = primorial(r);
  std::uint64_t best = 0, run = 0;
  for (std::uint64_t n = 1; n <= 2 * P; ++n) {
    run = gcd(n, P) > 1 ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

inline Seq random_sequence(std::mt19937_64& rng, int r, int n) {
  std::uniform_int_distribution<int> color(0, r - 1);
  Seq c(static_cast<std::size_t>(n));
  for (auto& x : c) x = color(rng);
  return c;
}

}  // namespace oracle
