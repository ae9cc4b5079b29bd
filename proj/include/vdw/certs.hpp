#pragma once

// Certificate families: published maximal colorings written as patterns with
// variable slots, e.g. "0^7 {a} 0^2 {b}" with a, b ranging over {0, 1} minus
// some excluded joint assignments. See docs/certificate-format.md for the
// dataset file layout.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "canon.hpp"
#include "core.hpp"
#include "error.hpp"
#include "known_values.hpp"
#include "validity.hpp"

namespace vdw {

struct PatternToken {
  bool is_variable = false;
  Color color = 0;                       // literal
  std::string variable;                  // variable slot
  std::optional<std::size_t> component;  // {v.i}; whole tuple when absent
  std::size_t repeat = 1;

  friend bool operator==(const PatternToken&, const PatternToken&) = default;
};

struct FamilyVariable {
  std::string name;
  std::vector<std::vector<Color>> domain;  // tuples, all of one arity

  std::size_t arity() const { return domain.empty() ? 0 : domain.front().size(); }
};

// One forbidden joint assignment: variable names[i] takes values[i].
struct Exclusion {
  std::vector<std::string> names;
  std::vector<std::vector<Color>> values;
};

struct CertificateFamily {
  Instance instance;
  std::size_t w = 0;
  std::vector<PatternToken> pattern;
  std::vector<FamilyVariable> variables;
  std::vector<Exclusion> exclusions;
  bool includes_reversals = false;
};

enum class CountConvention {
  renaming,               // colorings equal up to renaming count once; reversals count separately
  renaming_and_reversal,  // reversal also identifies
};

struct CertificateEntry {
  std::string name;
  Instance instance;
  std::size_t w = 0;
  std::vector<CertificateFamily> families;
  std::size_t expected_total = 0;
  CountConvention convention = CountConvention::renaming;
  std::vector<std::string> notes;

  SymmetryGroup counting_group() const {
    return symmetry_group(instance, convention == CountConvention::renaming_and_reversal);
  }
};

struct CertificateDataset {
  int version = 1;
  std::vector<CertificateEntry> entries;

  const CertificateEntry* find(std::string_view name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
};

// ----------------------------------------------------------------------------
// Pattern parsing
// ----------------------------------------------------------------------------

inline std::vector<PatternToken> parse_pattern(std::string_view text) {
  std::vector<PatternToken> out;
  std::size_t i = 0;
  for (;;) {
    while (i < text.size() && detail::is_space(text[i])) ++i;
    if (i >= text.size()) break;
    PatternToken tok;
    if (text[i] == '{') {
      const std::size_t open = i++;
      const std::size_t close = text.find('}', i);
      if (close == std::string_view::npos) throw parse_error("unterminated '{'", open);
      std::string_view body = text.substr(i, close - i);
      const std::size_t dot = body.find('.');
      tok.is_variable = true;
      tok.variable = std::string(body.substr(0, dot));
      if (tok.variable.empty()) throw parse_error("empty variable name", open);
      if (dot != std::string_view::npos) {
        std::size_t j = 0;
        std::string_view idx = body.substr(dot + 1);
        tok.component = static_cast<std::size_t>(detail::read_decimal(idx, j, "component index"));
        if (j != idx.size()) throw parse_error("bad component index", open);
      }
      i = close + 1;
    } else {
      tok.color = detail::read_color(text, i);
    }
    tok.repeat = detail::read_exponent(text, i);
    out.push_back(std::move(tok));
  }
  return out;
}

inline std::string format_pattern(const std::vector<PatternToken>& pattern) {
  std::string out;
  for (const auto& tok : pattern) {
    if (!out.empty()) out.push_back(' ');
    if (tok.is_variable) {
      out += '{' + tok.variable;
      if (tok.component) out += '.' + std::to_string(*tok.component);
      out += '}';
    } else {
      detail::append_color_token(out, tok.color);
    }
    if (tok.repeat > 1) out += '^' + std::to_string(tok.repeat);
  }
  return out;
}

// ----------------------------------------------------------------------------
// Expansion
// ----------------------------------------------------------------------------

inline void check_family(const CertificateFamily& f) {
  std::map<std::string, const FamilyVariable*> vars;
  for (const auto& v : f.variables) {
    if (v.domain.empty()) throw malformed_family("variable " + v.name + " has an empty domain");
    for (const auto& value : v.domain) {
      if (value.size() != v.arity())
        throw malformed_family("variable " + v.name + " mixes tuple arities");
      for (Color c : value)
        if (c >= f.instance.r())
          throw malformed_family("variable " + v.name + " takes color " + std::to_string(c) +
                                 " outside the instance");
    }
    if (!vars.emplace(v.name, &v).second) throw malformed_family("variable " + v.name + " declared twice");
  }
  for (const auto& tok : f.pattern) {
    if (!tok.is_variable) {
      if (tok.color >= f.instance.r())
        throw malformed_family("pattern color " + std::to_string(tok.color) + " outside the instance");
      continue;
    }
    auto it = vars.find(tok.variable);
    if (it == vars.end()) throw malformed_family("pattern uses undeclared variable " + tok.variable);
    if (tok.component && *tok.component >= it->second->arity())
      throw malformed_family("component " + std::to_string(*tok.component) + " of " + tok.variable +
                             " is out of range");
  }
  for (const auto& ex : f.exclusions) {
    if (ex.names.size() != ex.values.size() || ex.names.empty())
      throw malformed_family("exclusion lists " + std::to_string(ex.names.size()) + " names and " +
                             std::to_string(ex.values.size()) + " values");
    for (std::size_t i = 0; i < ex.names.size(); ++i) {
      auto it = vars.find(ex.names[i]);
      if (it == vars.end()) throw malformed_family("exclusion uses undeclared variable " + ex.names[i]);
      if (ex.values[i].size() != it->second->arity())
        throw malformed_family("exclusion value for " + ex.names[i] + " has the wrong arity");
    }
  }
}

namespace detail {

inline Coloring instantiate(const CertificateFamily& f, const std::vector<std::size_t>& choice) {
  std::map<std::string_view, const std::vector<Color>*> value;
  for (std::size_t v = 0; v < f.variables.size(); ++v)
    value[f.variables[v].name] = &f.variables[v].domain[choice[v]];
  std::vector<Color> out;
  for (const auto& tok : f.pattern) {
    for (std::size_t rep = 0; rep < tok.repeat; ++rep) {
      if (!tok.is_variable) {
        out.push_back(tok.color);
      } else if (tok.component) {
        out.push_back((*value[tok.variable])[*tok.component]);
      } else {
        const auto& tuple = *value[tok.variable];
        out.insert(out.end(), tuple.begin(), tuple.end());
      }
    }
  }
  return Coloring(std::move(out));
}

inline bool excluded(const CertificateFamily& f, const std::vector<std::size_t>& choice) {
  for (const auto& ex : f.exclusions) {
    bool all = true;
    for (std::size_t i = 0; i < ex.names.size() && all; ++i) {
      for (std::size_t v = 0; v < f.variables.size(); ++v) {
        if (f.variables[v].name == ex.names[i]) {
          all = f.variables[v].domain[choice[v]] == ex.values[i];
          break;
        }
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace detail

// Concrete colorings of a family: admissible assignments in lexicographic
// order (last variable fastest), then, if the family includes reversals, the
// reversal of each one that is not equivalent to itself under renaming.
inline std::vector<Coloring> expand_family(const CertificateFamily& f) {
  check_family(f);
  std::vector<Coloring> out;
  std::vector<std::size_t> choice(f.variables.size(), 0);
  for (;;) {
    if (!detail::excluded(f, choice)) out.push_back(detail::instantiate(f, choice));
    std::size_t v = f.variables.size();
    while (v > 0) {
      --v;
      if (++choice[v] < f.variables[v].domain.size()) break;
      choice[v] = 0;
      if (v == 0) {
        v = f.variables.size() + 1;
        break;
      }
    }
    if (f.variables.empty() || v == f.variables.size() + 1) break;
  }
  if (f.includes_reversals) {
    const SymmetryGroup g = symmetry_group(f.instance, false);
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      Coloring rev = reverse(out[i]);
      if (canonical_form(rev, g) != canonical_form(out[i], g)) out.push_back(std::move(rev));
    }
  }
  return out;
}

// ----------------------------------------------------------------------------
// Verification
// ----------------------------------------------------------------------------

struct EntryReport {
  std::string name;
  std::size_t w = 0;
  std::size_t expected_total = 0;
  std::size_t expanded = 0;          // colorings produced by all families
  std::size_t distinct = 0;          // classes under the entry's counting convention
  std::size_t wrong_length = 0;
  std::size_t invalid = 0;
  std::size_t self_reversal = 0;     // colorings equivalent to their own reversal
  bool matches_table = false;        // w agrees with the known-value table
  std::optional<std::string> failure;  // first problem, human-readable
  std::optional<Violation> first_violation;

  bool passed() const {
    return !failure && wrong_length == 0 && invalid == 0 && distinct == expected_total && matches_table;
  }
};

struct DatasetReport {
  std::vector<EntryReport> entries;

  bool passed() const {
    return !entries.empty() &&
           std::all_of(entries.begin(), entries.end(), [](const EntryReport& e) { return e.passed(); });
  }
};

inline EntryReport verify_entry(const CertificateEntry& entry) {
  EntryReport rep;
  rep.name = entry.name;
  rep.w = entry.w;
  rep.expected_total = entry.expected_total;
  const auto known = known_value(entry.instance);
  rep.matches_table = known && *known == entry.w;
  if (!rep.matches_table)
    rep.failure = "w = " + std::to_string(entry.w) + " does not match the known-value table";

  const SymmetryGroup renaming = symmetry_group(entry.instance, false);
  std::vector<Coloring> all;
  for (std::size_t fi = 0; fi < entry.families.size(); ++fi) {
    std::vector<Coloring> cs;
    try {
      cs = expand_family(entry.families[fi]);
    } catch (const error& e) {
      if (!rep.failure) rep.failure = "family " + std::to_string(fi + 1) + ": " + e.what();
      continue;
    }
    for (const Coloring& c : cs) {
      ++rep.expanded;
      if (c.size() + 1 != entry.w) {
        ++rep.wrong_length;
        if (!rep.failure)
          rep.failure = "family " + std::to_string(fi + 1) + ": coloring " + format_coloring(c, true) +
                        " has length " + std::to_string(c.size()) + ", expected " +
                        std::to_string(entry.w - 1);
        continue;
      }
      if (auto v = find_violation(c, entry.instance)) {
        ++rep.invalid;
        if (!rep.first_violation) {
          rep.first_violation = v;
          if (!rep.failure)
            rep.failure = "family " + std::to_string(fi + 1) + ": coloring " + format_coloring(c, true) +
                          " contains a progression (" + describe(*v) + ")";
        }
      }
      if (canonical_form(reverse(c), renaming) == canonical_form(c, renaming)) ++rep.self_reversal;
      all.push_back(c);
    }
  }
  rep.distinct = dedup(all, entry.counting_group()).size();
  if (!rep.failure && rep.distinct != rep.expected_total)
    rep.failure = "found " + std::to_string(rep.distinct) + " distinct colorings, expected " +
                  std::to_string(rep.expected_total);
  return rep;
}

inline DatasetReport verify_dataset(const CertificateDataset& ds) {
  DatasetReport rep;
  for (const auto& e : ds.entries) rep.entries.push_back(verify_entry(e));
  return rep;
}

// All distinct colorings of an entry, as canonical forms under its counting
// convention.
inline std::vector<Coloring> entry_colorings(const CertificateEntry& entry) {
  std::vector<Coloring> all;
  for (const auto& f : entry.families)
    for (auto& c : expand_family(f)) all.push_back(std::move(c));
  return dedup(all, entry.counting_group());
}

// ----------------------------------------------------------------------------
// Dataset text format
// ----------------------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// A tuple value such as "01" or "(12)3": a separator-free compact coloring.
inline std::vector<Color> parse_tuple(const std::string& word, std::size_t line) {
  try {
    return parse_coloring(word).colors();
  } catch (const parse_error& e) {
    throw parse_error(std::string("bad value '") + word + "': " + e.what(), line);
  }
}

inline std::size_t parse_count(const std::string& word, std::size_t line) {
  std::size_t i = 0;
  try {
    const std::uint64_t v = read_decimal(word, i, "number");
    if (i != word.size()) throw parse_error("trailing characters", i);
    return static_cast<std::size_t>(v);
  } catch (const parse_error&) {
    throw parse_error("expected a number, got '" + word + "'", line);
  }
}

}  // namespace detail

inline CertificateDataset parse_dataset(std::string_view text) {
  CertificateDataset ds;
  bool have_header = false;
  std::optional<CertificateEntry> entry;
  std::optional<CertificateFamily> family;
  std::string pattern_text;
  std::size_t line_no = 0;

  auto close_family = [&](std::size_t line) {
    try {
      family->pattern = parse_pattern(pattern_text);
    } catch (const parse_error& e) {
      throw parse_error(std::string("pattern: ") + e.what(), line);
    }
    if (family->pattern.empty()) throw parse_error("family without a pattern", line);
    entry->families.push_back(std::move(*family));
    family.reset();
    pattern_text.clear();
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = detail::trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const std::size_t sp = line.find_first_of(" \t");
    const std::string key(line.substr(0, sp));
    const std::string_view rest = sp == std::string_view::npos ? std::string_view{} : detail::trim(line.substr(sp));
    const auto args = detail::words(rest);

    if (!have_header) {
      if (key != "format" || args.size() != 2 || args[0] != "vdw-certificates")
        throw parse_error("expected 'format vdw-certificates <version>'", line_no);
      ds.version = static_cast<int>(detail::parse_count(args[1], line_no));
      if (ds.version != 1) throw parse_error("unsupported dataset version", line_no);
      have_header = true;
      continue;
    }

    if (family) {
      if (key == "pattern") {
        pattern_text += ' ';
        pattern_text += rest;
      } else if (key == "var") {
        if (args.size() < 2) throw parse_error("var needs a name and at least one value", line_no);
        FamilyVariable v{args[0], {}};
        for (std::size_t i = 1; i < args.size(); ++i) v.domain.push_back(detail::parse_tuple(args[i], line_no));
        family->variables.push_back(std::move(v));
      } else if (key == "exclude") {
        const auto eq = std::find(args.begin(), args.end(), "=");
        if (eq == args.end()) throw parse_error("exclude needs 'names = values'", line_no);
        Exclusion ex;
        ex.names.assign(args.begin(), eq);
        for (auto it = eq + 1; it != args.end(); ++it) ex.values.push_back(detail::parse_tuple(*it, line_no));
        if (ex.names.size() != ex.values.size() || ex.names.empty())
          throw parse_error("exclude lists a different number of names and values", line_no);
        family->exclusions.push_back(std::move(ex));
      } else if (key == "reversals") {
        if (args.size() != 1 || (args[0] != "yes" && args[0] != "no"))
          throw parse_error("reversals takes yes or no", line_no);
        family->includes_reversals = args[0] == "yes";
      } else if (key == "end") {
        close_family(line_no);
      } else {
        throw parse_error("unknown family field '" + key + "'", line_no);
      }
      continue;
    }

    if (entry) {
      if (key == "k") {
        std::vector<int> k;
        for (const auto& a : args) k.push_back(static_cast<int>(detail::parse_count(a, line_no)));
        try {
          entry->instance = Instance(std::move(k));
        } catch (const invalid_instance& e) {
          throw parse_error(e.what(), line_no);
        }
      } else if (key == "w") {
        if (args.size() != 1) throw parse_error("w takes one number", line_no);
        entry->w = detail::parse_count(args[0], line_no);
      } else if (key == "expected") {
        if (args.size() != 1) throw parse_error("expected takes one number", line_no);
        entry->expected_total = detail::parse_count(args[0], line_no);
      } else if (key == "count") {
        if (args.size() != 1) throw parse_error("count takes one word", line_no);
        if (args[0] == "renaming") entry->convention = CountConvention::renaming;
        else if (args[0] == "renaming+reversal") entry->convention = CountConvention::renaming_and_reversal;
        else throw parse_error("unknown count convention '" + args[0] + "'", line_no);
      } else if (key == "note") {
        entry->notes.emplace_back(rest);
      } else if (key == "family") {
        if (entry->instance.r() == 0) throw parse_error("family before k", line_no);
        if (entry->w == 0) throw parse_error("family before w", line_no);
        family = CertificateFamily{};
        family->instance = entry->instance;
        family->w = entry->w;
      } else if (key == "end") {
        if (entry->instance.r() == 0 || entry->w == 0) throw parse_error("entry needs k and w", line_no);
        ds.entries.push_back(std::move(*entry));
        entry.reset();
      } else {
        throw parse_error("unknown entry field '" + key + "'", line_no);
      }
      continue;
    }

    if (key == "entry") {
      if (args.size() != 1) throw parse_error("entry takes one name", line_no);
      entry = CertificateEntry{};
      entry->name = args[0];
    } else {
      throw parse_error("expected 'entry'", line_no);
    }
  }
  if (!have_header) throw parse_error("empty dataset", line_no);
  if (family || entry) throw parse_error("unterminated entry at end of file", line_no);
  return ds;
}

inline CertificateDataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dataset(ss.str());
}

}  // namespace vdw
