#pragma once

// The `vdw` command-line front end, kept in a header so tests can drive it
// in-process. Requires CLI11 and nlohmann/json on the include path.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "certs.hpp"
#include "core.hpp"
#include "formula.hpp"
#include "search.hpp"
#include "known_values.hpp"
#include "validity.hpp"

namespace vdw::cli {

inline constexpr int schema_version = 1;

enum exit_code : int {
  exit_ok = 0,
  exit_input = 1,
  exit_budget = 2,
  exit_verification = 3,
};

using Json = nlohmann::ordered_json;

inline Json instance_json(const Instance& inst) {
  return Json{{"k", std::vector<int>(inst.ks().begin(), inst.ks().end())}, {"label", inst.label()}};
}

inline Json document(std::string_view command) {
  Json doc;
  doc["schema_version"] = schema_version;
  doc["command"] = command;
  return doc;
}

inline Json violation_json(const Violation& v) {
  return Json{{"color", v.color}, {"start", v.start}, {"gap", v.gap}, {"length", v.length}};
}

inline double millis(std::chrono::nanoseconds d) { return static_cast<double>(d.count()) / 1e6; }

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

// ----------------------------------------------------------------------------
// compute
// ----------------------------------------------------------------------------

struct ComputeOptions {
  std::string k;
  std::optional<std::uint64_t> budget;
  bool enumerate = false;
  bool parallel = false;
  unsigned threads = 0;
  bool json = false;
  bool progress = false;
  bool no_lookahead = false;
  bool backjump = false;
};

inline int cmd_compute(const ComputeOptions& o, Streams io) {
  const Instance inst = parse_instance(o.k);
  SearchConfig cfg;
  cfg.enumerate_all = o.enumerate;
  cfg.node_budget = o.budget;
  cfg.parallel = o.parallel;
  cfg.threads = o.threads;
  cfg.lookahead = !o.no_lookahead;
  cfg.backjumping = o.backjump;
  if (o.progress) {
    cfg.progress = [&io](const SearchProgress& p) {
      io.err << "nodes " << p.nodes << "  best length " << p.best_length << std::endl;
    };
  }
  const SearchOutcome res = compute_w(inst, cfg);
  const bool exact = res.exhaustive;

  if (o.json) {
    Json doc = document("compute");
    doc["instance"] = instance_json(inst);
    doc["w"] = res.w;
    doc["status"] = exact ? "exact" : "lower-bound";
    if (res.certificates_collected) {
      Json certs = Json::array();
      for (const auto& c : res.certificates) certs.push_back(format_coloring(c, true));
      doc["certificates"] = std::move(certs);
    }
    doc["stats"] = Json{{"nodes_explored", res.nodes_explored}, {"elapsed_ms", millis(res.elapsed)}};
    io.out << doc.dump(2) << '\n';
  } else {
    io.out << "instance  " << inst.label() << '\n';
    io.out << "w         " << res.w << (exact ? "" : "  (lower bound: budget exhausted)") << '\n';
    io.out << "status    " << (exact ? "exact" : "lower-bound") << '\n';
    io.out << "nodes     " << res.nodes_explored << '\n';
    io.out << "elapsed   " << std::fixed << std::setprecision(1) << millis(res.elapsed) << " ms\n";
    if (res.certificates_collected) {
      io.out << "maximal colorings of [1," << res.w - 1 << "]: " << res.certificates.size() << '\n';
      for (const auto& c : res.certificates) io.out << "  " << format_coloring(c, true) << '\n';
    }
  }
  return exact ? exit_ok : exit_budget;
}

// ----------------------------------------------------------------------------
// formula
// ----------------------------------------------------------------------------

struct FormulaOptions {
  std::int64_t k = 0;
  int r = 0;
  bool witness = false;
  bool json = false;
};

inline int cmd_formula(const FormulaOptions& o, Streams io) {
  const FormulaResult f = w2_formula(o.k, o.r);
  std::optional<Coloring> witness;
  if (o.witness) witness = extremal_coloring(o.k, o.r);

  if (o.json) {
    Json doc = document("formula");
    doc["instance"] = instance_json(w2_instance(o.k, o.r));
    doc["k"] = f.k;
    doc["r"] = f.r;
    doc["w"] = f.value;
    doc["status"] = to_string(f.status);
    doc["case"] = to_string(f.which);
    doc["j"] = f.j;
    doc["l"] = f.l ? Json(*f.l) : Json(nullptr);
    doc["m"] = f.m;
    doc["remark_override"] = f.remark_override;
    if (witness) doc["witness"] = format_coloring(*witness, true);
    io.out << doc.dump(2) << '\n';
  } else {
    io.out << "w2(" << f.k << ";" << f.r << ") " << (f.status == FormulaStatus::exact ? "= " : ">= ")
           << f.value << '\n';
    io.out << "case      " << to_string(f.which) << '\n';
    io.out << "status    " << to_string(f.status) << (f.remark_override ? " (exact for r = 4, k >= 5)" : "")
           << '\n';
    io.out << "j = " << f.j << ", l = " << (f.l ? std::to_string(*f.l) : std::string("none")) << ", m = " << f.m
           << '\n';
    if (witness)
      io.out << "witness of length " << witness->size() << ":\n  " << format_coloring(*witness, true) << '\n';
  }
  return exit_ok;
}

// ----------------------------------------------------------------------------
// verify
// ----------------------------------------------------------------------------

struct VerifyOptions {
  std::string data;  // empty: embedded dataset
  bool json = false;
};

inline int cmd_verify(const VerifyOptions& o, std::string_view embedded, Streams io) {
  const CertificateDataset ds = o.data.empty() ? parse_dataset(embedded) : load_dataset(o.data);
  const DatasetReport rep = verify_dataset(ds);

  if (o.json) {
    Json doc = document("verify");
    Json entries = Json::array();
    for (const auto& e : rep.entries) {
      Json j{{"name", e.name},     {"w", e.w},
             {"passed", e.passed()}, {"expected", e.expected_total},
             {"distinct", e.distinct}, {"expanded", e.expanded},
             {"wrong_length", e.wrong_length}, {"invalid", e.invalid},
             {"self_reversal", e.self_reversal}, {"matches_table", e.matches_table}};
      if (e.failure) j["failure"] = *e.failure;
      if (e.first_violation) j["violation"] = violation_json(*e.first_violation);
      entries.push_back(std::move(j));
    }
    doc["entries"] = std::move(entries);
    doc["passed"] = rep.passed();
    io.out << doc.dump(2) << '\n';
  } else {
    std::size_t ok = 0;
    for (const auto& e : rep.entries) {
      io.out << (e.passed() ? "ok    " : "FAIL  ") << std::left << std::setw(16) << e.name << std::right
             << " w=" << e.w << "  colorings " << e.distinct << "/" << e.expected_total << '\n';
      if (e.failure) io.out << "      " << *e.failure << '\n';
      ok += e.passed();
    }
    io.out << ok << " of " << rep.entries.size() << " entries pass\n";
  }
  return rep.passed() ? exit_ok : exit_verification;
}

// ----------------------------------------------------------------------------
// check
// ----------------------------------------------------------------------------

struct CheckOptions {
  std::string k;
  std::string coloring;
  bool json = false;
};

inline int cmd_check(const CheckOptions& o, Streams io) {
  const Instance inst = parse_instance(o.k);
  const Coloring c = parse_coloring(o.coloring);
  const auto v = find_violation(c, inst);

  if (o.json) {
    Json doc = document("check");
    doc["instance"] = instance_json(inst);
    doc["length"] = c.size();
    doc["valid"] = !v;
    if (v) doc["violation"] = violation_json(*v);
    io.out << doc.dump(2) << '\n';
  } else if (v) {
    io.out << "invalid: " << describe(*v) << '\n';
  } else {
    io.out << "valid (length " << c.size() << ")\n";
  }
  return exit_ok;
}

// ----------------------------------------------------------------------------
// table: regression over the known values
// ----------------------------------------------------------------------------

struct TableOptions {
  std::string tier = "fast";
  std::optional<std::uint64_t> budget;
  bool parallel = false;
  bool json = false;
};

inline int cmd_table(const TableOptions& o, Streams io) {
  const auto tier = parse_tier(o.tier);
  if (!tier) throw invalid_instance("unknown tier '" + o.tier + "' (fast, medium, long)");
  SearchConfig cfg;
  cfg.node_budget = o.budget;
  cfg.parallel = o.parallel;

  bool all_ok = true, budget_hit = false;
  Json rows = Json::array();
  for (const auto& kv : known_values_in(*tier)) {
    const Instance inst = kv.instance();
    const SearchOutcome res = compute_w(inst, cfg);
    const bool ok = res.exhaustive && res.w == kv.w;
    all_ok &= ok;
    budget_hit |= !res.exhaustive;
    if (o.json) {
      rows.push_back(Json{{"instance", inst.label()},
                          {"expected", kv.w},
                          {"w", res.w},
                          {"status", res.exhaustive ? "exact" : "lower-bound"},
                          {"passed", ok},
                          {"stats", Json{{"nodes_explored", res.nodes_explored},
                                         {"elapsed_ms", millis(res.elapsed)}}}});
    } else {
      io.out << (ok ? "ok    " : "FAIL  ") << std::left << std::setw(14) << inst.label() << std::right
             << " w=" << res.w << (res.exhaustive ? "" : " (budget)") << "  expected " << kv.w << "  "
             << std::fixed << std::setprecision(1) << millis(res.elapsed) << " ms" << std::endl;
    }
  }
  if (o.json) {
    Json doc = document("table");
    doc["tier"] = to_string(*tier);
    doc["rows"] = std::move(rows);
    doc["passed"] = all_ok;
    io.out << doc.dump(2) << '\n';
  }
  if (all_ok) return exit_ok;
  return budget_hit ? exit_budget : exit_verification;
}

// ----------------------------------------------------------------------------
// Entry point
// ----------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::string_view embedded_dataset, Streams io) {
  CLI::App app{"Exact van der Waerden numbers, certificates and the w2 closed form", "vdw"};
  app.require_subcommand(1);

  ComputeOptions compute;
  auto* c = app.add_subcommand("compute", "compute w(k_0, ..., k_{r-1}) by exhaustive search");
  c->add_option("--k", compute.k, "progression lengths, e.g. 4,3,2")->required();
  c->add_option("--budget", compute.budget, "stop after this many search nodes")->check(CLI::PositiveNumber);
  c->add_flag("--enumerate", compute.enumerate, "also list every maximal valid coloring");
  c->add_flag("--parallel", compute.parallel, "split the search over worker threads (VDW_THREADS)");
  c->add_option("--threads", compute.threads, "worker count for --parallel");
  c->add_flag("--json", compute.json, "print a JSON result document");
  c->add_flag("--progress", compute.progress, "periodic node counts on stderr");
  c->add_flag("--no-lookahead", compute.no_lookahead, "disable forward checking");
  c->add_flag("--backjump", compute.backjump, "jump back past irrelevant positions at dead ends");

  FormulaOptions formula;
  auto* f = app.add_subcommand("formula", "evaluate the closed form for w(k, 2, ..., 2; r)");
  f->add_option("--k", formula.k, "progression length of color 0")->required();
  f->add_option("--r", formula.r, "number of colors")->required();
  f->add_flag("--witness", formula.witness, "print a valid coloring of length value - 1");
  f->add_flag("--json", formula.json, "print a JSON result document");

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "check the certificate dataset");
  v->add_option("--data", verify.data, "dataset file (default: the built-in one)");
  v->add_flag("--json", verify.json, "print a JSON report");

  CheckOptions check;
  auto* ch = app.add_subcommand("check", "check one coloring");
  ch->add_option("--k", check.k, "progression lengths, e.g. 3,3")->required();
  ch->add_option("--coloring", check.coloring, "compact coloring, e.g. \"0^2 1 0\"")->required();
  ch->add_flag("--json", check.json, "print a JSON result document");

  TableOptions table;
  auto* t = app.add_subcommand("table", "recompute the known values of one tier");
  t->add_option("--tier", table.tier, "fast, medium or long");
  t->add_option("--budget", table.budget, "node budget per instance")->check(CLI::PositiveNumber);
  t->add_flag("--parallel", table.parallel, "parallel search");
  t->add_flag("--json", table.json, "print a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help comes through here too, with exit code 0.
    return app.exit(e, io.out, io.err) == 0 ? exit_ok : exit_input;
  }

  try {
    if (*c) return cmd_compute(compute, io);
    if (*f) return cmd_formula(formula, io);
    if (*v) return cmd_verify(verify, embedded_dataset, io);
    if (*ch) return cmd_check(check, io);
    if (*t) return cmd_table(table, io);
  } catch (const budget_exhausted& e) {
    io.err << "vdw: " << e.what() << '\n';
    return exit_budget;
  } catch (const error& e) {
    io.err << "vdw: " << e.what() << '\n';
    return exit_input;
  }
  return exit_input;
}

}  // namespace vdw::cli
