#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace vdw {

using Color = std::uint16_t;

inline constexpr std::size_t max_coloring_length = std::size_t{1} << 24;

// ----------------------------------------------------------------------------
// Coloring
// ----------------------------------------------------------------------------

// A coloring of the integer interval [1, n]. Index i (0-based) holds the color
// of the integer i + 1; reporting elsewhere uses the 1-based positions.
class Coloring {
public:
  Coloring() = default;
  explicit Coloring(std::vector<Color> colors) : colors_(std::move(colors)) {}
  Coloring(std::initializer_list<Color> colors) : colors_(colors) {}

  std::size_t size() const noexcept { return colors_.size(); }
  bool empty() const noexcept { return colors_.empty(); }

  Color operator[](std::size_t i) const noexcept { return colors_[i]; }
  Color& operator[](std::size_t i) noexcept { return colors_[i]; }

  // Color of the integer `position` in [1, n].
  Color at_position(std::size_t position) const { return colors_.at(position - 1); }

  void push_back(Color c) { colors_.push_back(c); }
  void pop_back() { colors_.pop_back(); }

  auto begin() const noexcept { return colors_.begin(); }
  auto end() const noexcept { return colors_.end(); }

  std::span<const Color> view() const noexcept { return colors_; }
  const std::vector<Color>& colors() const noexcept { return colors_; }

  Color max_color() const noexcept {
    return colors_.empty() ? Color{0} : *std::max_element(colors_.begin(), colors_.end());
  }

  friend bool operator==(const Coloring&, const Coloring&) = default;
  friend auto operator<=>(const Coloring& a, const Coloring& b) { return a.colors_ <=> b.colors_; }

private:
  std::vector<Color> colors_;
};

inline Coloring reverse(const Coloring& c) {
  std::vector<Color> out(c.begin(), c.end());
  std::reverse(out.begin(), out.end());
  return Coloring(std::move(out));
}

inline Coloring concat(const Coloring& a, const Coloring& b) {
  std::vector<Color> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return Coloring(std::move(out));
}

// ----------------------------------------------------------------------------
// Compact string codec
//
//   coloring := token* ; token := color exponent?
//   color    := digit | "(" decimal ")"
//   exponent := "^" positive-decimal
//
// Whitespace between tokens is ignored, so "00111" and "0^2 1^3" denote the
// same coloring. An exponent takes every digit that follows it: "0^21" is
// twenty-one zeros.
// ----------------------------------------------------------------------------

namespace detail {

inline bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r'; }
inline bool is_digit(char ch) { return ch >= '0' && ch <= '9'; }

// Reads a decimal number starting at `i`; `i` is left on the first non-digit.
inline std::uint64_t read_decimal(std::string_view text, std::size_t& i, const char* what) {
  const std::size_t start = i;
  std::uint64_t v = 0;
  while (i < text.size() && is_digit(text[i])) {
    v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
    if (v > max_coloring_length) throw parse_error(std::string(what) + " too large", start);
    ++i;
  }
  if (i == start) throw parse_error(std::string("expected ") + what, start);
  return v;
}

// Parses one color token (without exponent) at `i`.
inline Color read_color(std::string_view text, std::size_t& i) {
  if (i >= text.size()) throw parse_error("expected color", i);
  const char ch = text[i];
  if (is_digit(ch)) {
    ++i;
    return static_cast<Color>(ch - '0');
  }
  if (ch == '(') {
    const std::size_t open = i++;
    const std::uint64_t v = read_decimal(text, i, "color");
    if (i >= text.size() || text[i] != ')') throw parse_error("unterminated '('", open);
    ++i;
    if (v > std::numeric_limits<Color>::max()) throw parse_error("color too large", open);
    return static_cast<Color>(v);
  }
  throw parse_error(std::string("unexpected character '") + ch + "'", i);
}

// Parses an optional "^n" at `i`; returns 1 when absent.
inline std::size_t read_exponent(std::string_view text, std::size_t& i) {
  if (i >= text.size() || text[i] != '^') return 1;
  const std::size_t caret = i++;
  const std::uint64_t e = read_decimal(text, i, "exponent");
  if (e == 0) throw parse_error("exponent 0 is not allowed", caret);
  return static_cast<std::size_t>(e);
}

inline void append_color_token(std::string& out, Color c) {
  if (c < 10) {
    out.push_back(static_cast<char>('0' + c));
  } else {
    out.push_back('(');
    out += std::to_string(c);
    out.push_back(')');
  }
}

}  // namespace detail

inline Coloring parse_coloring(std::string_view text) {
  std::vector<Color> out;
  std::size_t i = 0;
  for (;;) {
    while (i < text.size() && detail::is_space(text[i])) ++i;
    if (i >= text.size()) break;
    const Color c = detail::read_color(text, i);
    const std::size_t e = detail::read_exponent(text, i);
    if (out.size() + e > max_coloring_length) throw parse_error("coloring too long", i);
    out.insert(out.end(), e, c);
  }
  return Coloring(std::move(out));
}

inline std::string format_coloring(const Coloring& c, bool compact) {
  std::string out;
  if (!compact) {
    for (Color x : c) detail::append_color_token(out, x);
    return out;
  }
  std::size_t i = 0;
  while (i < c.size()) {
    std::size_t j = i;
    while (j < c.size() && c[j] == c[i]) ++j;
    if (!out.empty()) out.push_back(' ');
    detail::append_color_token(out, c[i]);
    if (j - i > 1) {
      out.push_back('^');
      out += std::to_string(j - i);
    }
    i = j;
  }
  return out;
}

// ----------------------------------------------------------------------------
// Instance
// ----------------------------------------------------------------------------

// The tuple (k_0, ..., k_{r-1}): color i must avoid k_i-term arithmetic
// progressions. r is the length of the tuple.
class Instance {
public:
  Instance() = default;

  explicit Instance(std::vector<int> k) : k_(std::move(k)) {
    if (k_.empty()) throw invalid_instance("instance needs at least one color");
    if (k_.size() > std::numeric_limits<Color>::max())
      throw invalid_instance("too many colors");
    for (std::size_t i = 0; i < k_.size(); ++i) {
      if (k_[i] < 1)
        throw invalid_instance("k[" + std::to_string(i) + "] = " + std::to_string(k_[i]) +
                               " must be at least 1");
    }
  }
  Instance(std::initializer_list<int> k) : Instance(std::vector<int>(k)) {}

  std::size_t r() const noexcept { return k_.size(); }
  int k(std::size_t color) const { return k_.at(color); }
  std::span<const int> ks() const noexcept { return k_; }

  // "(4,3,2)" style label.
  std::string label() const {
    std::string s = "(";
    for (std::size_t i = 0; i < k_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(k_[i]);
    }
    return s + ")";
  }

  friend bool operator==(const Instance&, const Instance&) = default;

private:
  std::vector<int> k_;
};

// Parses "4,3,2" (commas and/or whitespace).
inline Instance parse_instance(std::string_view text) {
  std::vector<int> k;
  std::size_t i = 0;
  for (;;) {
    while (i < text.size() && (detail::is_space(text[i]) || text[i] == ',')) ++i;
    if (i >= text.size()) break;
    if (text[i] == '-') throw invalid_instance("negative progression length");
    const std::uint64_t v = detail::read_decimal(text, i, "integer");
    if (i < text.size() && !detail::is_space(text[i]) && text[i] != ',')
      throw parse_error(std::string("unexpected character '") + text[i] + "'", i);
    k.push_back(static_cast<int>(v));
  }
  return Instance(std::move(k));
}

struct InstanceInfo {
  Instance instance;
  // k[i] = 1: any single element of color i is already a progression.
  std::vector<Color> unusable;
  // k[i] = 2: color i may appear at most once.
  std::vector<Color> at_most_once;
  // Every color is unusable, so w = 1.
  bool trivial = false;
};

inline InstanceInfo validate_instance(std::vector<int> k) {
  InstanceInfo info{Instance(std::move(k)), {}, {}, false};
  const Instance& inst = info.instance;
  for (std::size_t i = 0; i < inst.r(); ++i) {
    if (inst.k(i) == 1) info.unusable.push_back(static_cast<Color>(i));
    if (inst.k(i) == 2) info.at_most_once.push_back(static_cast<Color>(i));
  }
  info.trivial = info.unusable.size() == inst.r();
  return info;
}

inline InstanceInfo validate_instance(const Instance& inst) {
  return validate_instance(std::vector<int>(inst.ks().begin(), inst.ks().end()));
}

}  // namespace vdw
