#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "canon.hpp"
#include "core.hpp"
#include "error.hpp"
#include "validity.hpp"

namespace vdw {

// ----------------------------------------------------------------------------
// Configuration, results, trace events
// ----------------------------------------------------------------------------

enum class TraceDecision {
  extend,     // color accepted at position; one per explored node
  reject,     // color refused (progression completed, once-color reused, symmetry)
  prune,      // lookahead proved the subtree cannot reach the bound
  leaf,       // no color fits the next position
  collect,    // node reached the collection depth
  jump,       // backjump: `position` is the target
};

struct TraceEvent {
  std::size_t depth = 0;     // positions colored when the event fires
  std::size_t position = 0;  // position the event concerns (1-based)
  Color color = 0;
  TraceDecision decision = TraceDecision::extend;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct SearchProgress {
  std::uint64_t nodes = 0;
  std::size_t best_length = 0;
};

struct SearchConfig {
  bool enumerate_all = false;
  std::optional<std::uint64_t> node_budget;
  bool parallel = false;
  unsigned threads = 0;  // 0: default_thread_count()
  bool symmetry_reduction = true;
  // Forward checking: track, for every future position, the colors that
  // would complete a progression there; prune when some position inside the
  // bound has no color left.
  bool lookahead = true;
  // On a dead end, jump back to the latest position named by a witness.
  bool backjumping = false;

  // Sequential mode only.
  std::function<void(const TraceEvent&)> trace;
  std::function<void(const SearchProgress&)> progress;
  std::uint64_t progress_interval = std::uint64_t{1} << 24;
};

struct SearchOutcome {
  std::size_t w = 0;
  // Canonical (color renaming only) maximal valid colorings, sorted. Empty
  // unless enumeration was requested.
  std::vector<Coloring> certificates;
  bool certificates_collected = false;
  std::uint64_t nodes_explored = 0;
  std::chrono::nanoseconds elapsed{0};
  bool exhaustive = false;
};

inline unsigned default_thread_count() {
  if (const char* env = std::getenv("VDW_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

namespace detail {

inline constexpr Color unassigned = std::numeric_limits<Color>::max();

// Shared between the workers of one search pass.
struct SharedState {
  std::atomic<std::size_t> best{0};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::optional<std::uint64_t> budget;
  std::atomic<bool> leaf_extendable{false};

  void raise_best(std::size_t n) {
    std::size_t cur = best.load(std::memory_order_relaxed);
    while (n > cur && !best.compare_exchange_weak(cur, n, std::memory_order_relaxed)) {
    }
  }
};

enum class BoundMode {
  incumbent,  // prune subtrees that cannot beat the longest coloring seen
  fixed,      // prune subtrees that cannot reach `fixed_bound`
};

struct PassSpec {
  BoundMode mode = BoundMode::incumbent;
  std::size_t fixed_bound = 0;
  std::size_t collect_depth = 0;  // 0: never collect
};

// Depth-first search state for one worker.
//
// Lookahead keeps, for every uncolored position q, the set of colors that
// would complete a progression at q. A position where every color with
// k >= 3 is excluded ("pinned") can only take an at-most-once color, and each
// of those fits at most one position. So once the number of pinned positions
// inside the bound exceeds the number of unused at-most-once colors, no
// continuation reaches the bound.
class Engine {
public:
  Engine(const Instance& inst, const SearchConfig& cfg, SharedState& shared, PassSpec pass)
    : cfg_(cfg), shared_(shared), pass_(pass), r_(inst.r()) {
    if (r_ > 64) throw invalid_instance("search supports at most 64 colors");
    k_.assign(inst.ks().begin(), inst.ks().end());
    for (std::size_t x = 0; x < r_; ++x) {
      if (k_[x] >= 2) usable_ |= bit(x);
      if (k_[x] == 2) {
        once_ |= bit(x);
        ++unused_once_;
      }
    }
    main_ = usable_ & ~once_;
    prev_in_class_.assign(r_, none);
    if (cfg_.symmetry_reduction) {
      const SymmetryGroup g = symmetry_group(inst, false);
      for (const auto& cls : g.classes)
        for (std::size_t i = 1; i < cls.size(); ++i) prev_in_class_[cls[i]] = cls[i - 1];
    }
    count_.assign(r_, 0);
    once_position_.assign(r_, 0);
    ensure_capacity(64);
  }

  std::vector<std::vector<Color>>& collected() noexcept { return collected_; }

  // Colors the prefix without counting nodes. Returns false if the prefix
  // does not fit (generated prefixes always do).
  bool replay(std::span<const Color> prefix) {
    for (Color x : prefix) {
      if (!fits(depth_ + 1, x)) return false;
      place(x);
    }
    return true;
  }

  // Explores every continuation of the current prefix.
  void run() {
    if (!node_open(depth_)) return;
    explore();
  }

private:
  static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  static std::uint64_t bit(std::size_t x) { return std::uint64_t{1} << x; }

  void ensure_capacity(std::size_t positions) {
    if (positions + 2 <= cap_) return;
    const std::size_t cap = std::max<std::size_t>(cap_ * 2, positions + 2);
    col_.resize(cap, unassigned);
    forb_.resize(cap * r_, 0);
    forb_mask_.resize(cap, 0);
    pinned_.resize(cap, 0);
    fenwick_.assign(cap + 1, 0);
    for (std::size_t q = 1; q < cap; ++q)
      if (pinned_[q]) fenwick_add(q, 1);
    cap_ = cap;
  }

  void fenwick_add(std::size_t q, int delta) {
    for (std::size_t i = q; i < fenwick_.size(); i += i & (~i + 1)) fenwick_[i] += delta;
  }

  // Pinned positions in [1, q].
  std::int64_t fenwick_prefix(std::size_t q) const {
    std::int64_t s = 0;
    for (std::size_t i = std::min(q, fenwick_.size() - 1); i > 0; i -= i & (~i + 1)) s += fenwick_[i];
    return s;
  }

  // Pinned positions in (depth_, bound].
  std::size_t pinned_within(std::size_t bound) const {
    if (bound <= depth_) return 0;
    if (main_ == 0) return bound - depth_;  // every position needs a fresh once-color
    return static_cast<std::size_t>(fenwick_prefix(bound) - fenwick_prefix(depth_));
  }

  std::size_t bound() const {
    return pass_.mode == BoundMode::fixed ? pass_.fixed_bound
                                          : shared_.best.load(std::memory_order_relaxed) + 1;
  }

  void emit(std::size_t position, Color x, TraceDecision d) {
    if (cfg_.trace) cfg_.trace(TraceEvent{depth_, position, x, d});
  }

  // Would a k[x]-term progression of color x end at `p` (all earlier terms
  // already colored)? Scans gaps from the largest down; on success
  // `culprit` receives the latest other term.
  bool completes_progression(std::size_t p, Color x, std::size_t* culprit) const {
    const std::size_t span = static_cast<std::size_t>(k_[x] - 1);
    for (std::size_t d = (p - 1) / span; d >= 1; --d) {
      std::size_t t = 1;
      while (t <= span && col_[p - t * d] == x) ++t;
      if (t > span) {
        if (culprit) *culprit = p - d;
        return true;
      }
    }
    return false;
  }

  // Validity of color x at position p (symmetry not considered).
  bool fits(std::size_t p, Color x) const {
    if (!(usable_ & bit(x))) return false;
    if (once_ & bit(x)) return count_[x] == 0;
    if (cfg_.lookahead) return forb_[p * r_ + x] == 0;
    return !completes_progression(p, x, nullptr);
  }

  void place(Color x) {
    const std::size_t p = ++depth_;
    ensure_capacity(2 * p + 2);
    col_[p] = x;
    ++count_[x];
    trail_marks_.push_back(trail_.size());
    if (once_ & bit(x)) {
      once_position_[x] = p;
      --unused_once_;
      return;
    }
    if (!cfg_.lookahead) return;
    // Progressions whose first k-1 terms end at p (p is the newest colored
    // position, so it must be the last of them) forbid x at p + d.
    const std::size_t inner = static_cast<std::size_t>(k_[x] - 2);
    for (std::size_t d = 1; inner * d < p; ++d) {
      std::size_t t = 1;
      while (t <= inner && col_[p - t * d] == x) ++t;
      if (t <= inner) continue;
      const std::size_t q = p + d;
      if (forb_[q * r_ + x]++ == 0) {
        forb_mask_[q] |= bit(x);
        if (!pinned_[q] && (main_ & ~forb_mask_[q]) == 0) {
          pinned_[q] = 1;
          fenwick_add(q, 1);
        }
      }
      trail_.push_back(static_cast<std::uint32_t>(q));
    }
  }

  void unplace() {
    const std::size_t p = depth_;
    const Color x = col_[p];
    const std::size_t mark = trail_marks_.back();
    trail_marks_.pop_back();
    while (trail_.size() > mark) {
      const std::size_t q = trail_.back();
      trail_.pop_back();
      if (--forb_[q * r_ + x] == 0) {
        forb_mask_[q] &= ~bit(x);
        if (pinned_[q]) {
          pinned_[q] = 0;
          fenwick_add(q, -1);
        }
      }
    }
    if (once_ & bit(x)) ++unused_once_;
    --count_[x];
    col_[p] = unassigned;
    --depth_;
  }

  // Bookkeeping for a freshly accepted node at depth n. Returns whether its
  // children should be explored.
  bool node_open(std::size_t n) {
    if (pass_.mode == BoundMode::incumbent) shared_.raise_best(n);
    if (pass_.collect_depth != 0 && n == pass_.collect_depth) {
      emit(n, n, TraceDecision::collect);
      collected_.emplace_back(col_.begin() + 1, col_.begin() + 1 + static_cast<std::ptrdiff_t>(n));
      if (pass_.mode == BoundMode::fixed && n == pass_.fixed_bound) check_leaf_extendable(n);
      return false;
    }
    if (cfg_.lookahead && pinned_within(bound()) > unused_once_) {
      emit(n, n + 1, TraceDecision::prune);
      return false;
    }
    return true;
  }

  void check_leaf_extendable(std::size_t n) {
    for (std::size_t x = 0; x < r_; ++x) {
      if (!(usable_ & bit(x))) continue;
      const bool ok = (once_ & bit(x)) ? count_[x] == 0
                                       : !completes_progression(n + 1, static_cast<Color>(x), nullptr);
      if (ok) shared_.leaf_extendable = true;
    }
  }

  bool count_node() {
    const std::uint64_t total = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (shared_.budget && total >= *shared_.budget) shared_.stop = true;
    if (cfg_.progress && cfg_.progress_interval && total % cfg_.progress_interval == 0)
      cfg_.progress(SearchProgress{total, shared_.best.load(std::memory_order_relaxed)});
    return !shared_.stop.load(std::memory_order_relaxed);
  }

  // Explores children of the node at depth_. Returns the position whose color
  // should be revised next: depth_ normally, something smaller after a
  // backjump, 0 when the search is stopping.
  std::size_t explore() {
    const std::size_t n = depth_;
    const std::size_t p = n + 1;
    bool any_child = false;
    bool witnessed = true;
    std::size_t culprit = 0;
    for (std::size_t xi = 0; xi < r_; ++xi) {
      const Color x = static_cast<Color>(xi);
      if (!(usable_ & bit(x))) continue;
      if (prev_in_class_[x] != none && count_[x] == 0 && count_[prev_in_class_[x]] == 0) {
        emit(p, x, TraceDecision::reject);
        witnessed = false;
        continue;
      }
      if (!fits(p, x)) {
        emit(p, x, TraceDecision::reject);
        if (cfg_.backjumping) {
          std::size_t c = 0;
          if (once_ & bit(x)) {
            c = once_position_[x];
          } else {
            completes_progression(p, x, &c);
          }
          culprit = std::max(culprit, c);
        }
        continue;
      }
      place(x);
      any_child = true;
      emit(p, x, TraceDecision::extend);
      const bool go_on = count_node();
      std::size_t ret = p;
      if (go_on && node_open(p)) ret = explore();
      unplace();
      if (shared_.stop.load(std::memory_order_relaxed)) return 0;
      if (ret < p) return ret;
    }
    if (!any_child) {
      emit(n, p, TraceDecision::leaf);
      if (cfg_.backjumping && witnessed && culprit < n) {
        emit(culprit, 0, TraceDecision::jump);
        return culprit;
      }
    }
    return n;
  }

  const SearchConfig& cfg_;
  SharedState& shared_;
  PassSpec pass_;
  std::size_t r_;
  std::vector<int> k_;
  std::uint64_t usable_ = 0;  // k >= 2
  std::uint64_t once_ = 0;    // k == 2
  std::uint64_t main_ = 0;    // k >= 3
  std::size_t unused_once_ = 0;
  std::vector<std::size_t> prev_in_class_;

  std::size_t depth_ = 0;
  std::size_t cap_ = 0;
  std::vector<Color> col_;                  // 1-based
  std::vector<std::size_t> count_;          // uses per color
  std::vector<std::size_t> once_position_;  // where an at-most-once color sits
  std::vector<std::uint32_t> forb_;         // [q * r + x]: progressions q would complete in x
  std::vector<std::uint64_t> forb_mask_;
  std::vector<std::uint8_t> pinned_;
  std::vector<std::int32_t> fenwick_;
  std::vector<std::uint32_t> trail_;
  std::vector<std::size_t> trail_marks_;

  std::vector<std::vector<Color>> collected_;
};

struct PassResult {
  std::size_t best = 0;
  std::vector<std::vector<Color>> collected;
  bool stopped = false;
  bool leaf_extendable = false;
};

inline PassResult run_sequential(const Instance& inst, const SearchConfig& cfg, SharedState& shared,
                                 PassSpec pass) {
  Engine e(inst, cfg, shared, pass);
  e.run();
  PassResult res;
  res.best = shared.best.load();
  res.collected = std::move(e.collected());
  res.stopped = shared.stop.load();
  res.leaf_extendable = shared.leaf_extendable.load();
  return res;
}

// Splits the tree at a shallow depth and hands the subtrees to workers. The
// incumbent and the node counter are shared; collected leaves are merged by
// concatenation (the caller canonicalizes and sorts).
inline PassResult run_parallel(const Instance& inst, const SearchConfig& cfg, SharedState& shared,
                               PassSpec pass, unsigned threads) {
  SearchConfig quiet = cfg;
  quiet.trace = nullptr;

  const std::size_t want_tasks = 16 * static_cast<std::size_t>(threads);
  std::vector<std::vector<Color>> tasks;
  std::size_t split = 4;
  for (;;) {
    if (pass.collect_depth != 0 && split >= pass.collect_depth) {
      // The whole pass fits under the split depth.
      return run_sequential(inst, quiet, shared, pass);
    }
    // Prefix generation counts into a scratch budget so the real pass starts
    // from zero nodes; the incumbent it finds is kept.
    SharedState scratch;
    scratch.best = shared.best.load();
    PassSpec gen = pass;
    gen.collect_depth = split;
    Engine e(inst, quiet, scratch, gen);
    e.run();
    shared.raise_best(scratch.best.load());
    tasks = std::move(e.collected());
    if (tasks.size() >= want_tasks || split >= 24) break;
    split += 2;
  }

  std::atomic<std::size_t> next{0};
  std::mutex merge_mutex;
  PassResult res;
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size() || shared.stop.load()) break;
          Engine e(inst, quiet, shared, pass);
          if (e.replay(tasks[i])) e.run();
          if (!e.collected().empty()) {
            std::lock_guard lock(merge_mutex);
            for (auto& c : e.collected()) res.collected.push_back(std::move(c));
          }
        }
      } catch (...) {
        errors[t] = std::current_exception();
        shared.stop = true;
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& ep : errors)
    if (ep) std::rethrow_exception(ep);
  res.best = shared.best.load();
  res.stopped = shared.stop.load();
  res.leaf_extendable = shared.leaf_extendable.load();
  return res;
}

inline PassResult run_pass(const Instance& inst, const SearchConfig& cfg, SharedState& shared,
                           PassSpec pass) {
  const unsigned threads = cfg.threads ? cfg.threads : default_thread_count();
  if (cfg.parallel) return run_parallel(inst, cfg, shared, pass, threads);
  return run_sequential(inst, cfg, shared, pass);
}

inline std::vector<Coloring> canonical_set(std::vector<std::vector<Color>>& raw, const Instance& inst) {
  const SymmetryGroup g = symmetry_group(inst, false);
  std::vector<Coloring> cs;
  cs.reserve(raw.size());
  for (auto& v : raw) cs.emplace_back(std::move(v));
  return dedup(cs, g);
}

inline void check_searchable(const Instance& inst, const SearchConfig& cfg) {
  if (inst.r() > 64) throw invalid_instance("search supports at most 64 colors");
  if (cfg.node_budget && *cfg.node_budget == 0) throw invalid_instance("node budget must be positive");
}

}  // namespace detail

// ----------------------------------------------------------------------------
// Public operations
// ----------------------------------------------------------------------------

// Every valid coloring of [1, w-1], as canonical representatives under color
// renaming (reversals stay distinct), sorted. Throws if w is not exact: when a
// coloring of length w-1 extends, or when none exists (w too large).
inline std::vector<Coloring> enumerate_maximal(const Instance& inst, std::size_t w,
                                               const SearchConfig& cfg = {},
                                               std::uint64_t* nodes_out = nullptr) {
  detail::check_searchable(inst, cfg);
  if (w == 0) throw invalid_instance("w must be positive");
  const std::size_t length = w - 1;
  if (length == 0) {
    if (nodes_out) *nodes_out = 0;
    const InstanceInfo info = validate_instance(inst);
    if (!info.trivial) throw error("w = 1 is not exact for " + inst.label());
    return {Coloring{}};
  }
  detail::SharedState shared;
  shared.budget = cfg.node_budget;
  const detail::PassResult res =
      detail::run_pass(inst, cfg, shared, {detail::BoundMode::fixed, length, length});
  if (nodes_out) *nodes_out = shared.nodes.load();
  if (res.stopped) throw budget_exhausted("node budget exhausted during enumeration");
  if (res.leaf_extendable)
    throw error("a valid coloring of length " + std::to_string(w) + " exists; w is not exact");
  auto raw = res.collected;
  std::vector<Coloring> out = detail::canonical_set(raw, inst);
  if (out.empty()) throw error("no valid coloring of length " + std::to_string(length) + " exists");
  return out;
}

// w = 1 + (length of the longest valid coloring). With a node budget the
// outcome may be a lower bound only (exhaustive == false).
inline SearchOutcome compute_w(const Instance& inst, const SearchConfig& cfg = {}) {
  detail::check_searchable(inst, cfg);
  const auto t0 = std::chrono::steady_clock::now();
  SearchOutcome out;
  const InstanceInfo info = validate_instance(inst);
  if (info.trivial) {
    out.w = 1;
    out.exhaustive = true;
    if (cfg.enumerate_all) {
      out.certificates = {Coloring{}};
      out.certificates_collected = true;
    }
    out.elapsed = std::chrono::steady_clock::now() - t0;
    return out;
  }

  detail::SharedState shared;
  shared.budget = cfg.node_budget;
  const detail::PassResult first =
      detail::run_pass(inst, cfg, shared, {detail::BoundMode::incumbent, 0, 0});
  out.w = first.best + 1;
  out.exhaustive = !first.stopped;
  out.nodes_explored = shared.nodes.load();

  if (cfg.enumerate_all && out.exhaustive) {
    SearchConfig second = cfg;
    if (cfg.node_budget) second.node_budget = *cfg.node_budget - out.nodes_explored;
    std::uint64_t nodes = 0;
    try {
      out.certificates = enumerate_maximal(inst, out.w, second, &nodes);
      out.certificates_collected = true;
    } catch (const budget_exhausted&) {
      out.exhaustive = false;
      nodes = *second.node_budget;
    }
    out.nodes_explored += nodes;
  }
  out.elapsed = std::chrono::steady_clock::now() - t0;
  return out;
}

// Deterministic event stream of a sequential first pass (and the enumeration
// pass when cfg.enumerate_all is set).
inline SearchOutcome search_trace(const Instance& inst, SearchConfig cfg,
                                  std::function<void(const TraceEvent&)> sink) {
  if (cfg.parallel) throw invalid_instance("search_trace requires sequential mode");
  cfg.trace = std::move(sink);
  return compute_w(inst, cfg);
}

inline std::vector<TraceEvent> search_trace(const Instance& inst, const SearchConfig& cfg,
                                            SearchOutcome* outcome = nullptr) {
  std::vector<TraceEvent> events;
  SearchOutcome o = search_trace(inst, cfg, [&](const TraceEvent& e) { events.push_back(e); });
  if (outcome) *outcome = std::move(o);
  return events;
}

}  // namespace vdw
