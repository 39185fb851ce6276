#pragma once

#include <cstdint>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <branchorder/budget.hpp>
#include <branchorder/presentation.hpp>
#include <branchorder/word.hpp>

namespace branchorder {

enum class CosetStatus { complete, exceeded };

// Outcome of coset enumeration over the trivial subgroup. When complete, the
// action is the regular representation: action[g][c] is coset c * g and every
// generator acts as a total permutation.
struct CosetTable {
  CosetStatus status = CosetStatus::exceeded;
  std::size_t cosets = 0;                       // group order when complete
  std::vector<std::vector<int>> action;         // [generator][coset]
  std::vector<std::vector<int>> inverse_action; // [generator][coset]
  std::size_t cosets_defined = 0;               // rows ever created

  bool complete() const { return status == CosetStatus::complete; }
};

namespace coset_detail {

// Relator-tracing (HLT-style) enumerator with union-find coincidence
// handling. Reads resolve dead cosets lazily through find().
class Enumerator {
 public:
  Enumerator(const Presentation& P, std::size_t max_cosets)
      : ngens_(P.generator_count()), nletters_(2 * P.generator_count()),
        max_cosets_(max_cosets) {
    for (const auto& r : P.relators()) {
      std::vector<int> letters;
      for (const auto& s : r.syllables()) {
        int letter = s.exp > 0 ? 2 * s.gen : 2 * s.gen + 1;
        std::int64_t reps = s.exp > 0 ? s.exp : -s.exp;
        for (std::int64_t i = 0; i < reps; ++i) letters.push_back(letter);
      }
      if (!letters.empty()) relators_.push_back(std::move(letters));
    }
  }

  // Letter-by-letter tracing is hopeless for gigantic powers; report the
  // budget as exceeded rather than attempting it.
  static bool traceable(const Presentation& P) {
    for (const auto& r : P.relators())
      if (r.letter_length() > 1'000'000) return false;
    return true;
  }

  CosetTable run() {
    define_root();
    for (std::size_t alpha = 0; alpha < rows(); ++alpha) {
      if (!alive(alpha)) continue;
      for (const auto& rel : relators_) {
        if (!scan_and_fill(alpha, rel)) return exceeded();
        if (!alive(alpha)) break;
      }
      if (!alive(alpha)) continue;
      for (int x = 0; x < nletters_; ++x) {
        if (get(alpha, x) == -1) {
          if (!define(alpha, x)) return exceeded();
          process_coincidences();
          if (!alive(alpha)) break;
        }
      }
    }
    return finalize();
  }

 private:
  static int inv(int letter) { return letter ^ 1; }

  std::size_t rows() const { return parent_.size(); }
  bool alive(std::size_t c) { return find(c) == c; }

  std::size_t find(std::size_t c) {
    while (parent_[c] != c) {
      parent_[c] = parent_[parent_[c]];
      c = parent_[c];
    }
    return c;
  }

  int get(std::size_t c, int x) {
    int raw = table_[c * static_cast<std::size_t>(nletters_) + static_cast<std::size_t>(x)];
    if (raw < 0) return -1;
    int resolved = static_cast<int>(find(static_cast<std::size_t>(raw)));
    table_[c * static_cast<std::size_t>(nletters_) + static_cast<std::size_t>(x)] = resolved;
    return resolved;
  }

  void put(std::size_t c, int x, int value) {
    table_[c * static_cast<std::size_t>(nletters_) + static_cast<std::size_t>(x)] = value;
  }

  void define_root() {
    parent_.push_back(0);
    table_.assign(static_cast<std::size_t>(nletters_), -1);
    live_ = 1;
  }

  bool define(std::size_t from, int x) {
    if (rows() >= max_cosets_) return false;
    std::size_t fresh = rows();
    parent_.push_back(fresh);
    table_.resize(table_.size() + static_cast<std::size_t>(nletters_), -1);
    ++live_;
    set_edge(from, x, static_cast<int>(fresh));
    return true;
  }

  // Records from * x = to, queuing a coincidence on conflict.
  void set_edge(std::size_t from, int x, int to) {
    int existing = get(from, x);
    if (existing == -1) {
      put(from, x, to);
    } else if (existing != static_cast<int>(find(static_cast<std::size_t>(to)))) {
      queue_.emplace_back(existing, to);
    }
    std::size_t target = find(static_cast<std::size_t>(to));
    int back = get(target, inv(x));
    if (back == -1) {
      put(target, inv(x), static_cast<int>(find(from)));
    } else if (static_cast<std::size_t>(back) != find(from)) {
      queue_.emplace_back(back, static_cast<int>(find(from)));
    }
  }

  void process_coincidences() {
    while (!queue_.empty()) {
      auto [ra, rb] = queue_.front();
      queue_.pop_front();
      std::size_t a = find(static_cast<std::size_t>(ra));
      std::size_t b = find(static_cast<std::size_t>(rb));
      if (a == b) continue;
      if (b < a) std::swap(a, b);
      parent_[b] = a;  // b dies
      --live_;
      for (int x = 0; x < nletters_; ++x) {
        int img = table_[b * static_cast<std::size_t>(nletters_) + static_cast<std::size_t>(x)];
        if (img < 0) continue;
        int target = static_cast<int>(find(static_cast<std::size_t>(img)));
        int mine = get(a, x);
        if (mine == -1) {
          put(a, x, target);
          // Mirror edge for the target.
          int back = get(static_cast<std::size_t>(target), inv(x));
          if (back == -1)
            put(static_cast<std::size_t>(target), inv(x), static_cast<int>(a));
          else if (find(static_cast<std::size_t>(back)) != a)
            queue_.emplace_back(back, static_cast<int>(a));
        } else if (find(static_cast<std::size_t>(mine)) !=
                   find(static_cast<std::size_t>(target))) {
          queue_.emplace_back(mine, target);
        }
      }
    }
  }

  // Scans relator rel from coset alpha, defining cosets on gaps. Returns
  // false when the coset budget is exhausted.
  bool scan_and_fill(std::size_t alpha, const std::vector<int>& rel) {
    std::size_t f = alpha, b = alpha;
    std::size_t fi = 0, bi = rel.size();
    while (true) {
      while (fi < bi) {
        int next = get(f, rel[fi]);
        if (next == -1) break;
        f = static_cast<std::size_t>(next);
        ++fi;
      }
      while (bi > fi) {
        int prev = get(b, inv(rel[bi - 1]));
        if (prev == -1) break;
        b = static_cast<std::size_t>(prev);
        --bi;
      }
      if (fi == bi) {
        if (find(f) != find(b)) {
          queue_.emplace_back(static_cast<int>(f), static_cast<int>(b));
          process_coincidences();
        }
        return true;
      }
      if (bi == fi + 1) {
        set_edge(f, rel[fi], static_cast<int>(b));
        process_coincidences();
        return true;
      }
      if (!define(f, rel[fi])) return false;
      process_coincidences();
      if (!alive(alpha)) return true;  // alpha merged away; outer loop skips it
      // Collapses may have rearranged the trace; rescan from the start.
      f = b = alpha;
      fi = 0;
      bi = rel.size();
    }
  }

  CosetTable exceeded() {
    CosetTable t;
    t.status = CosetStatus::exceeded;
    t.cosets_defined = rows();
    return t;
  }

  CosetTable finalize() {
    // Closure check: every live coset fully defined and every relator closing.
    // HLT guarantees this; verify rather than trust.
    std::vector<int> relabel(rows(), -1);
    std::vector<std::size_t> live;
    for (std::size_t c = 0; c < rows(); ++c)
      if (alive(c)) {
        relabel[c] = static_cast<int>(live.size());
        live.push_back(c);
      }
    CosetTable t;
    t.cosets_defined = rows();
    t.cosets = live.size();
    t.action.assign(static_cast<std::size_t>(ngens_), std::vector<int>(live.size(), -1));
    t.inverse_action.assign(static_cast<std::size_t>(ngens_), std::vector<int>(live.size(), -1));
    for (std::size_t idx = 0; idx < live.size(); ++idx) {
      for (int g = 0; g < ngens_; ++g) {
        int fwd = get(live[idx], 2 * g);
        int bwd = get(live[idx], 2 * g + 1);
        if (fwd == -1 || bwd == -1) throw std::logic_error("incomplete closed table");
        t.action[static_cast<std::size_t>(g)][idx] = relabel[static_cast<std::size_t>(fwd)];
        t.inverse_action[static_cast<std::size_t>(g)][idx] =
            relabel[static_cast<std::size_t>(bwd)];
      }
    }
    for (int g = 0; g < ngens_; ++g)
      for (std::size_t idx = 0; idx < live.size(); ++idx) {
        int fwd = t.action[static_cast<std::size_t>(g)][idx];
        if (t.inverse_action[static_cast<std::size_t>(g)][static_cast<std::size_t>(fwd)] !=
            static_cast<int>(idx))
          throw std::logic_error("generator actions are not mutually inverse");
      }
    for (const auto& rel : relators_) {
      for (std::size_t idx = 0; idx < live.size(); ++idx) {
        std::size_t c = idx;
        for (int letter : rel) {
          int g = letter / 2;
          c = static_cast<std::size_t>(letter % 2 == 0
                                           ? t.action[static_cast<std::size_t>(g)][c]
                                           : t.inverse_action[static_cast<std::size_t>(g)][c]);
        }
        if (c != idx) throw std::logic_error("relator fails to close on complete table");
      }
    }
    t.status = CosetStatus::complete;
    return t;
  }

  int ngens_;
  int nletters_;
  std::size_t max_cosets_;
  std::vector<std::vector<int>> relators_;
  std::vector<int> table_;          // rows * nletters
  std::vector<std::size_t> parent_; // union-find
  std::deque<std::pair<int, int>> queue_;
  std::size_t live_ = 0;
};

}  // namespace coset_detail

// Bounded Todd-Coxeter enumeration of the trivial-subgroup cosets. A complete
// table certifies the exact group order; exceeding the budget says nothing.
inline CosetTable todd_coxeter(const Presentation& P, const SearchBudget& budget = {}) {
  budget.validate();
  if (P.generator_count() == 0) {
    CosetTable t;
    t.status = CosetStatus::complete;
    t.cosets = 1;
    t.cosets_defined = 1;
    return t;
  }
  if (!coset_detail::Enumerator::traceable(P)) {
    CosetTable t;
    t.status = CosetStatus::exceeded;
    return t;
  }
  coset_detail::Enumerator e(P, budget.max_cosets);
  return e.run();
}

// Coset reached from `start` by tracing w through a complete table. Large
// exponents are reduced modulo the generator's cycle length through the
// current coset.
inline std::size_t trace_coset(const CosetTable& table, std::size_t start, const Word& w) {
  if (!table.complete()) throw std::invalid_argument("trace requires a complete table");
  std::size_t c = start;
  for (const auto& s : w.syllables()) {
    const auto& perm = s.exp > 0 ? table.action[static_cast<std::size_t>(s.gen)]
                                 : table.inverse_action[static_cast<std::size_t>(s.gen)];
    std::int64_t reps = s.exp > 0 ? s.exp : -s.exp;
    if (reps <= 64) {
      for (std::int64_t i = 0; i < reps; ++i) c = static_cast<std::size_t>(perm[c]);
    } else {
      std::vector<std::size_t> cycle{c};
      std::size_t at = static_cast<std::size_t>(perm[c]);
      while (at != c) {
        cycle.push_back(at);
        at = static_cast<std::size_t>(perm[at]);
      }
      c = cycle[static_cast<std::size_t>(reps % static_cast<std::int64_t>(cycle.size()))];
    }
  }
  return c;
}

// Order of the permutation w induces on cosets; over the trivial subgroup the
// action is regular, so this is the order of w as a group element.
inline std::uint64_t order_of_element(const CosetTable& table, const Word& w) {
  if (!table.complete()) throw std::invalid_argument("order requires a complete table");
  const std::size_t n = table.cosets;
  // Image of every coset under w, one syllable at a time via cycle offsets.
  std::vector<std::size_t> image(n);
  for (std::size_t c = 0; c < n; ++c) image[c] = c;
  std::vector<std::size_t> next(n), cycle_id(n), cycle_pos(n);
  std::vector<std::vector<std::size_t>> cycles;
  for (const auto& s : w.syllables()) {
    const auto& perm = s.exp > 0 ? table.action[static_cast<std::size_t>(s.gen)]
                                 : table.inverse_action[static_cast<std::size_t>(s.gen)];
    std::int64_t reps = s.exp > 0 ? s.exp : -s.exp;
    cycles.clear();
    std::vector<bool> seen(n, false);
    cycle_id.assign(n, 0);
    cycle_pos.assign(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
      if (seen[c]) continue;
      cycles.emplace_back();
      std::size_t at = c;
      while (!seen[at]) {
        seen[at] = true;
        cycle_id[at] = cycles.size() - 1;
        cycle_pos[at] = cycles.back().size();
        cycles.back().push_back(at);
        at = static_cast<std::size_t>(perm[at]);
      }
    }
    for (std::size_t c = 0; c < n; ++c) {
      const auto& cyc = cycles[cycle_id[image[c]]];
      std::size_t off = static_cast<std::size_t>(
          (cycle_pos[image[c]] + static_cast<std::uint64_t>(reps % static_cast<std::int64_t>(cyc.size()))) %
          cyc.size());
      next[c] = cyc[off];
    }
    image.swap(next);
  }
  std::uint64_t order = 1;
  for (std::size_t c = image[0]; c != 0; c = image[c]) ++order;
  return order;
}

}  // namespace branchorder
