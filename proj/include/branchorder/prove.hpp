#pragma once

#include <cstddef>
#include <cstdint>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include <branchorder/budget.hpp>
#include <branchorder/presentation.hpp>
#include <branchorder/proof.hpp>
#include <branchorder/word.hpp>

namespace branchorder {

// Bounded search failed; says nothing about inequality.
struct Unknown {
  enum class Reason {
    budget_exhausted,
    search_space_exhausted,  // frontier died out (e.g. no relators)
    internal,                // assembled path failed replay; treated as not found
  };
  Reason reason = Reason::budget_exhausted;
  std::size_t states_visited = 0;
};

using ProveResult = std::variant<EqualityProof, Unknown>;

inline bool proved(const ProveResult& r) { return std::holds_alternative<EqualityProof>(r); }

// One insertable word: a cyclic rotation of a relator or of its inverse.
struct RelatorMove {
  std::size_t relator = 0;
  std::size_t rotation = 0;  // letter offset
  bool inverted = false;
  Word word;
};

// All distinct rotations of all relators and their inverses, in canonical
// order. Rotation offsets are enumerated per letter when the relator is
// short, per syllable boundary otherwise (large powers would blow up the
// move table; replay accepts any offset either way).
class MoveTable {
 public:
  explicit MoveTable(const Presentation& P, std::uint64_t rotation_cap = 64) {
    for (std::size_t ri = 0; ri < P.relators().size(); ++ri) {
      const Word& r = P.relators()[ri];
      if (r.empty()) continue;
      for (bool inv : {false, true}) {
        Word base = inv ? invert(r) : r;
        std::unordered_set<Word, WordHash> seen;
        std::uint64_t len = base.letter_length();
        auto add = [&](std::uint64_t t) {
          Word rot = rotate_letters(base, t);
          if (seen.insert(rot).second)
            moves_.push_back(RelatorMove{ri, static_cast<std::size_t>(t), inv, std::move(rot)});
        };
        if (len <= rotation_cap) {
          for (std::uint64_t t = 0; t < len; ++t) add(t);
        } else {
          std::uint64_t t = 0;
          for (const auto& s : base.syllables()) {
            add(t);
            t += static_cast<std::uint64_t>(s.exp < 0 ? -s.exp : s.exp);
          }
        }
      }
    }
  }

  const std::vector<RelatorMove>& moves() const { return moves_; }
  bool empty() const { return moves_.empty(); }

 private:
  std::vector<RelatorMove> moves_;
};

namespace detail {

struct SearchNode {
  Word word;
  int side = 0;              // 0: grown from u, 1: grown from v
  std::int64_t parent = -1;  // index into node pool
  ProofStep step;            // how word was obtained from parent
};

// Finds a step that undoes parent -> child: an insertion into child yielding
// parent, searched over rotations of the inverse relator (then any move).
// Insertions with cascading cancellation are not always undoable in one step,
// so callers must cope with nullopt.
inline std::optional<ProofStep> invert_step(const MoveTable& table, const Word& parent,
                                            const Word& child, const ProofStep& step) {
  for (const auto& m : table.moves()) {
    if (m.relator != step.relator || m.inverted == step.inverted) continue;
    for (std::size_t pos = 0; pos <= child.size(); ++pos) {
      if (insert_at(child, pos, m.word) == parent)
        return ProofStep{pos, m.relator, m.rotation, m.inverted};
    }
  }
  for (const auto& m : table.moves()) {
    for (std::size_t pos = 0; pos <= child.size(); ++pos) {
      if (insert_at(child, pos, m.word) == parent)
        return ProofStep{pos, m.relator, m.rotation, m.inverted};
    }
  }
  return std::nullopt;
}

// Greedy descent: repeatedly apply the letter-length-reducing insertion that
// yields the lenlex-least successor, until none exists. Cheap preprocessing
// that handles most concrete identities outright.
inline std::pair<Word, std::vector<ProofStep>> descend(const Word& start, const MoveTable& table,
                                                       const SearchBudget& budget) {
  Word w = start;
  std::vector<ProofStep> steps;
  bool improved = true;
  while (improved) {
    improved = false;
    Word best;
    ProofStep best_step;
    for (const auto& m : table.moves()) {
      for (std::size_t pos = 0; pos <= w.size(); ++pos) {
        Word next = insert_at(w, pos, m.word);
        if (next.letter_length() >= w.letter_length()) continue;
        if (next.size() > budget.max_word_length) continue;
        if (!improved || lenlex_less(next, best)) {
          improved = true;
          best = next;
          best_step = ProofStep{pos, m.relator, m.rotation, m.inverted};
        }
      }
    }
    if (improved) {
      w = best;
      steps.push_back(best_step);
    }
  }
  return {w, steps};
}

// Descent that only takes steps it can undo, recording the return path as it
// goes; `up` transforms min back into start. Used for the target side of the
// search, whose path must eventually run in the other direction.
struct DescentWithReturn {
  Word min;
  std::vector<ProofStep> up;
};

inline DescentWithReturn descend_with_return(const Word& start, const MoveTable& table,
                                             const SearchBudget& budget) {
  Word w = start;
  std::vector<ProofStep> up;  // collected child -> parent, deepest first
  bool improved = true;
  while (improved) {
    improved = false;
    // All strictly reducing candidates, best first.
    std::vector<std::pair<Word, ProofStep>> candidates;
    for (const auto& m : table.moves()) {
      for (std::size_t pos = 0; pos <= w.size(); ++pos) {
        Word next = insert_at(w, pos, m.word);
        if (next.letter_length() >= w.letter_length()) continue;
        if (next.size() > budget.max_word_length) continue;
        candidates.emplace_back(std::move(next),
                                ProofStep{pos, m.relator, m.rotation, m.inverted});
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& a, const auto& b) { return lenlex_less(a.first, b.first); });
    for (const auto& [next, step] : candidates) {
      auto inv = invert_step(table, w, next, step);
      if (!inv) continue;  // not undoable in one move; try the next candidate
      up.push_back(*inv);
      w = next;
      improved = true;
      break;
    }
  }
  std::reverse(up.begin(), up.end());
  return DescentWithReturn{std::move(w), std::move(up)};
}

}  // namespace detail

// Sound bounded prover for u = v in the group presented by P. A returned
// proof has been replay-checked; Unknown never implies inequality.
//
// Strategy: greedy length descent from both sides, then a bidirectional
// best-first search ordered by (letter length, lenlex, insertion order),
// meeting in the middle. Deterministic for a fixed budget.
inline ProveResult prove_equal(const Presentation& P, const Word& u, const Word& v,
                               const SearchBudget& budget, const MoveTable& table) {
  budget.validate();
  P.validate_word(u);
  P.validate_word(v);
  if (u == v) return EqualityProof{u, v, {}};
  if (table.empty()) return Unknown{Unknown::Reason::search_space_exhausted, 0};

  auto finish = [&](EqualityProof proof) -> ProveResult {
    if (!replay_proof(P, proof)) return Unknown{Unknown::Reason::internal, 0};
    return proof;
  };

  // Phase 1: greedy descent from u, undoable descent from v (its path must
  // run backwards in the final proof). Splice directly if the minima agree.
  auto descent_u = detail::descend(u, table, budget);
  const Word& mu = descent_u.first;
  const std::vector<ProofStep>& steps_u = descent_u.second;
  auto descent_v = detail::descend_with_return(v, table, budget);
  const Word& mv = descent_v.min;
  const std::vector<ProofStep>& up_v = descent_v.up;

  if (mu == mv) {
    std::vector<ProofStep> steps = steps_u;
    steps.insert(steps.end(), up_v.begin(), up_v.end());
    return finish(EqualityProof{u, v, std::move(steps)});
  }

  // Phase 2: bidirectional best-first search between the two minima; the
  // descent prefixes are prepended on success. Each side has its own
  // length-ordered frontier and the sides expand alternately, so neither
  // starves when the words differ a lot in length.
  std::vector<detail::SearchNode> nodes;
  std::unordered_map<Word, std::size_t, WordHash> seen;
  auto cmp = [&nodes](std::size_t a, std::size_t b) {
    std::uint64_t la = nodes[a].word.letter_length(), lb = nodes[b].word.letter_length();
    if (la != lb) return la > lb;
    if (nodes[a].word.syllables() != nodes[b].word.syllables())
      return nodes[b].word.syllables() < nodes[a].word.syllables();
    return a > b;
  };
  using Frontier = std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)>;
  Frontier frontiers[2] = {Frontier(cmp), Frontier(cmp)};
  std::size_t expanded[2] = {0, 0};

  nodes.push_back(detail::SearchNode{mu, 0, -1, {}});
  seen.emplace(mu, 0);
  frontiers[0].push(0);
  nodes.push_back(detail::SearchNode{mv, 1, -1, {}});
  seen.emplace(mv, 1);
  frontiers[1].push(1);

  // Path of steps from the side's root to node `id`.
  auto path_from_root = [&nodes](std::size_t id) {
    std::vector<ProofStep> path;
    for (std::int64_t at = static_cast<std::int64_t>(id); at >= 0 && nodes[at].parent >= 0;
         at = nodes[at].parent)
      path.push_back(nodes[at].step);
    std::reverse(path.begin(), path.end());
    return path;
  };

  auto assemble = [&](std::size_t u_side_id, std::size_t v_side_id) -> ProveResult {
    // meet word M: u-root ->* M (u side) and v-root ->* M (v side).
    std::vector<ProofStep> steps = steps_u;
    auto forward = path_from_root(u_side_id);
    steps.insert(steps.end(), forward.begin(), forward.end());
    // Invert the v-side path M <-* v-root, yielding M ->* v-root.
    std::vector<Word> trail;
    std::vector<ProofStep> down;
    for (std::int64_t at = static_cast<std::int64_t>(v_side_id); at >= 0;
         at = nodes[at].parent) {
      trail.push_back(nodes[at].word);
      if (nodes[at].parent >= 0) down.push_back(nodes[at].step);
    }
    // trail: M (=v_side word) ... v-root; down[i] maps trail[i+1] -> trail[i].
    for (std::size_t i = 0; i < down.size(); ++i) {
      auto inv = detail::invert_step(table, trail[i + 1], trail[i], down[i]);
      if (!inv) return Unknown{Unknown::Reason::internal, seen.size()};
      steps.push_back(*inv);
    }
    // Finally climb v's descent back up to v.
    steps.insert(steps.end(), up_v.begin(), up_v.end());
    return finish(EqualityProof{u, v, std::move(steps)});
  };

  while (!frontiers[0].empty() || !frontiers[1].empty()) {
    int side_pick;
    if (frontiers[0].empty())
      side_pick = 1;
    else if (frontiers[1].empty())
      side_pick = 0;
    else
      side_pick = expanded[0] <= expanded[1] ? 0 : 1;
    std::size_t cur = frontiers[side_pick].top();
    frontiers[side_pick].pop();
    ++expanded[side_pick];
    const Word w = nodes[cur].word;
    const int side = nodes[cur].side;
    for (const auto& m : table.moves()) {
      for (std::size_t pos = 0; pos <= w.size(); ++pos) {
        Word next = insert_at(w, pos, m.word);
        if (next.size() > budget.max_word_length) continue;
        auto it = seen.find(next);
        if (it != seen.end()) {
          if (nodes[it->second].side != side) {
            // Meet in the middle: register the connecting node on this side.
            nodes.push_back(detail::SearchNode{
                next, side, static_cast<std::int64_t>(cur),
                ProofStep{pos, m.relator, m.rotation, m.inverted}});
            std::size_t bridge = nodes.size() - 1;
            std::size_t u_id = side == 0 ? bridge : it->second;
            std::size_t v_id = side == 0 ? it->second : bridge;
            auto res = assemble(u_id, v_id);
            if (proved(res)) return res;
            nodes.pop_back();  // replay failed; keep searching
          }
          continue;
        }
        if (seen.size() >= budget.max_states)
          return Unknown{Unknown::Reason::budget_exhausted, seen.size()};
        nodes.push_back(detail::SearchNode{next, side, static_cast<std::int64_t>(cur),
                                           ProofStep{pos, m.relator, m.rotation, m.inverted}});
        seen.emplace(next, nodes.size() - 1);
        frontiers[side].push(nodes.size() - 1);
      }
    }
  }
  return Unknown{Unknown::Reason::search_space_exhausted, seen.size()};
}

inline ProveResult prove_equal(const Presentation& P, const Word& u, const Word& v,
                               const SearchBudget& budget = {}) {
  MoveTable table(P);
  return prove_equal(P, u, v, budget, table);
}

// Proves w = 1.
inline ProveResult prove_trivial(const Presentation& P, const Word& w,
                                 const SearchBudget& budget, const MoveTable& table) {
  return prove_equal(P, w, Word(), budget, table);
}

}  // namespace branchorder
