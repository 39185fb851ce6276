#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <branchorder/budget.hpp>
#include <branchorder/coset.hpp>
#include <branchorder/homology.hpp>
#include <branchorder/presentation.hpp>
#include <branchorder/prove.hpp>
#include <branchorder/universe.hpp>
#include <branchorder/word.hpp>

namespace branchorder {

// Leaf of the sign-assignment decision tree: a product of elements forced
// positive on the branch, with a replayable proof that the product is the
// identity. Products of positive-cone elements are never the identity, so a
// replaying leaf refutes the branch.
struct CertLeaf {
  std::vector<Word> chain;  // each entry: witness (signed +) or inverted witness (signed -)
  EqualityProof proof;      // start = reduced chain product, end = identity
};

struct CertNode;

// Exactly one of leaf/node is set.
struct CertTree {
  std::optional<CertLeaf> leaf;
  std::unique_ptr<CertNode> node;

  bool is_leaf() const { return leaf.has_value(); }
};

struct CertNode {
  Word element;  // equals witness[depth]
  CertTree positive;
  CertTree negative;
};

// Finite refutation of left-orderability: a complete binary decision tree
// over the signs of the witness elements, every branch ending in a replayable
// contradiction. Witnesses must be nontrivial (checked through their
// abelianization image) for the case split to be exhaustive.
struct NloCertificate {
  std::vector<Word> witness;
  CertTree tree;
};

struct Inconclusive {
  std::string note;
};

using NloResult = std::variant<NloCertificate, Inconclusive>;

struct NotApplicable {
  enum class Reason { trivial_group, enumeration_exceeded, no_usable_witness };
  Reason reason = Reason::enumeration_exceeded;
  std::size_t group_order = 0;  // meaningful for trivial_group / no_usable_witness
};

using ShortcutResult = std::variant<NloCertificate, NotApplicable>;

namespace nlo_detail {

inline CertTree leaf_tree(CertLeaf leaf) {
  CertTree t;
  t.leaf = std::move(leaf);
  return t;
}

inline CertTree node_tree(Word element, CertTree positive, CertTree negative) {
  CertTree t;
  t.node = std::make_unique<CertNode>();
  t.node->element = std::move(element);
  t.node->positive = std::move(positive);
  t.node->negative = std::move(negative);
  return t;
}

inline std::size_t tree_depth(const CertTree& t) {
  if (t.is_leaf()) return 0;
  return 1 + std::max(tree_depth(t.node->positive), tree_depth(t.node->negative));
}

// One forced-positive class together with the signed witness chain whose
// product is proven to land in it.
struct Forced {
  std::size_t cls;
  std::vector<Word> chain;
};

struct BranchState {
  std::vector<Forced> forced;                    // insertion order
  std::vector<std::size_t> forced_classes;       // sorted lookup mirror
  bool has(std::size_t cls) const {
    return std::binary_search(forced_classes.begin(), forced_classes.end(), cls);
  }
  void insert(Forced f) {
    forced_classes.insert(
        std::upper_bound(forced_classes.begin(), forced_classes.end(), f.cls), f.cls);
    forced.push_back(std::move(f));
  }
};

class ConeSearch {
 public:
  ConeSearch(const Presentation& P, const ElementUniverse& universe,
             const SearchBudget& budget)
      : P_(P), universe_(universe), budget_(budget), moves_(P) {}

  // nullopt: some branch admits no proven contradiction (search gives up).
  std::optional<CertTree> refute(const std::vector<Word>& witnesses) {
    witnesses_ = &witnesses;
    work_ = 0;
    BranchState root;
    return refute_from(0, root);
  }

 private:
  const Word& rep_word(std::size_t cls) const {
    return universe_.representatives[cls];  // class roots are lenlex-least members
  }

  // Closes `state` under products of forced positives; returns a proven
  // contradiction leaf if one is found on the way.
  std::optional<CertLeaf> propagate(BranchState& state, Forced seed) {
    std::vector<Forced> queue{std::move(seed)};
    std::vector<std::vector<Word>> candidates;  // chains whose product should be 1
    while (!queue.empty()) {
      Forced f = std::move(queue.front());
      queue.erase(queue.begin());
      if (state.has(f.cls)) continue;
      if (++work_ > budget_.max_states) break;  // sound give-up
      if (f.cls == universe_.trivial_class) {
        candidates.push_back(f.chain);
        continue;  // do not force the trivial class; just record
      }
      // Inverse clash: rep(cls) and a proven inverse both positive.
      Word inv_rep = invert(rep_word(f.cls));
      auto inv_it = universe_.index_of.find(inv_rep);
      if (inv_it != universe_.index_of.end()) {
        std::size_t inv_cls = universe_.class_id[inv_it->second];
        if (inv_cls == f.cls) {  // class contains a proven inverse of itself
          std::vector<Word> chain = f.chain;
          chain.insert(chain.end(), f.chain.begin(), f.chain.end());
          candidates.push_back(std::move(chain));
        }
        for (const auto& g : state.forced)
          if (g.cls == inv_cls) {
            std::vector<Word> chain = f.chain;
            chain.insert(chain.end(), g.chain.begin(), g.chain.end());
            candidates.push_back(std::move(chain));
          }
      }
      state.insert(f);
      const Forced& fresh = state.forced.back();
      for (const auto& g : state.forced) {
        for (const auto* lhs : {&g, &fresh}) {
          const auto* rhs = lhs == &g ? &fresh : &g;
          if (lhs->chain.size() + rhs->chain.size() > budget_.max_chain_factors) continue;
          Word product = concat(rep_word(lhs->cls), rep_word(rhs->cls));
          std::vector<Word> chain = lhs->chain;
          chain.insert(chain.end(), rhs->chain.begin(), rhs->chain.end());
          if (product.empty()) {
            candidates.push_back(std::move(chain));
            continue;
          }
          auto it = universe_.index_of.find(product);
          if (it == universe_.index_of.end()) continue;  // outside the ball: unknown
          queue.push_back(Forced{universe_.class_id[it->second], std::move(chain)});
        }
      }
    }
    // Try to manufacture a replayable proof for a recorded contradiction.
    for (const auto& chain : candidates) {
      WordBuilder b;
      for (const auto& w : chain) b.push_word(w);
      Word product = b.take();
      auto res = prove_trivial(P_, product, budget_, moves_);
      if (auto* proof = std::get_if<EqualityProof>(&res))
        return CertLeaf{chain, std::move(*proof)};
    }
    return std::nullopt;
  }

  std::optional<CertTree> refute_from(std::size_t level, const BranchState& state) {
    if (level >= witnesses_->size()) return std::nullopt;
    if (work_ > budget_.max_states) return std::nullopt;
    const Word& w = (*witnesses_)[level];
    CertTree branches[2];
    for (int sign = 0; sign < 2; ++sign) {
      Word seed_word = sign == 0 ? w : invert(w);
      auto it = universe_.index_of.find(seed_word);
      if (it == universe_.index_of.end()) return std::nullopt;
      BranchState next = state;
      auto leaf = propagate(next, Forced{universe_.class_id[it->second], {seed_word}});
      if (leaf) {
        branches[sign] = leaf_tree(std::move(*leaf));
        continue;
      }
      auto subtree = refute_from(level + 1, next);
      if (!subtree) return std::nullopt;
      branches[sign] = std::move(*subtree);
    }
    return node_tree(w, std::move(branches[0]), std::move(branches[1]));
  }

  const Presentation& P_;
  const ElementUniverse& universe_;
  SearchBudget budget_;
  MoveTable moves_;
  const std::vector<Word>* witnesses_ = nullptr;
  std::size_t work_ = 0;
};

}  // namespace nlo_detail

// Torsion shortcut: a complete coset enumeration with N > 1 yields a witness
// g of finite order m; the pair of proofs g^m = 1 and g^-m = 1 refutes both
// signs at once. N = 1 reports the trivial group, which the orderability
// definition excludes outright.
inline ShortcutResult finite_group_shortcut(const Presentation& P,
                                            const SearchBudget& budget = {}) {
  budget.validate();
  CosetTable table = todd_coxeter(P, budget);
  if (!table.complete())
    return NotApplicable{NotApplicable::Reason::enumeration_exceeded, 0};
  if (table.cosets <= 1)
    return NotApplicable{NotApplicable::Reason::trivial_group, 1};

  H1ImageTester h1(P);
  // Candidate torsion witnesses: generators, smallest order first.
  std::vector<std::pair<std::uint64_t, int>> candidates;
  for (int g = 0; g < P.generator_count(); ++g) {
    Word wg = word_of({{g, 1}});
    if (trace_coset(table, 0, wg) == 0) continue;  // trivial in the group
    if (!h1.nontrivial_in_h1(wg)) continue;        // verifier could not certify it
    candidates.emplace_back(order_of_element(table, wg), g);
  }
  std::sort(candidates.begin(), candidates.end());

  MoveTable moves(P);
  for (const auto& [m, g] : candidates) {
    Word wg = word_of({{g, 1}});
    for (std::size_t scale : {std::size_t{1}, std::size_t{4}, std::size_t{16}}) {
      SearchBudget b = budget.scaled_states(scale);
      auto pos = prove_trivial(P, word_of({{g, static_cast<std::int64_t>(m)}}), b, moves);
      if (!proved(pos)) continue;
      auto neg = prove_trivial(P, word_of({{g, -static_cast<std::int64_t>(m)}}), b, moves);
      if (!proved(neg)) continue;
      std::vector<Word> pos_chain(m, wg), neg_chain(m, invert(wg));
      NloCertificate cert;
      cert.witness = {wg};
      cert.tree = nlo_detail::node_tree(
          wg,
          nlo_detail::leaf_tree(CertLeaf{pos_chain, std::get<EqualityProof>(std::move(pos))}),
          nlo_detail::leaf_tree(CertLeaf{neg_chain, std::get<EqualityProof>(std::move(neg))}));
      return cert;
    }
  }
  return NotApplicable{NotApplicable::Reason::no_usable_witness, table.cosets};
}

// Exhaustive positive-cone contradiction search on the radius ball. A
// certificate soundly refutes every left order; Inconclusive carries no
// information. The torsion shortcut runs first unless the caller already did.
inline NloResult nlo_search(const Presentation& P, std::size_t radius,
                            const SearchBudget& budget = {}, bool use_shortcut = true) {
  budget.validate();
  if (use_shortcut) {
    auto shortcut = finite_group_shortcut(P, budget);
    if (auto* cert = std::get_if<NloCertificate>(&shortcut)) return std::move(*cert);
    if (std::get<NotApplicable>(shortcut).reason == NotApplicable::Reason::trivial_group)
      return Inconclusive{"group proven trivial; left-orderability is defined for nontrivial groups"};
  }

  ElementUniverse universe = build_universe(P, radius, budget);
  H1ImageTester h1(P);

  // Witnesses: class representatives certified nontrivial, lenlex order, one
  // per inverse pair.
  std::vector<Word> witnesses;
  std::vector<std::size_t> chosen_classes;
  for (const auto& cls : universe.classes()) {
    if (witnesses.size() >= budget.max_witnesses) break;
    if (cls.id == universe.trivial_class) continue;
    const Word& rep = universe.representatives[cls.representative];
    if (!h1.nontrivial_in_h1(rep)) continue;
    auto inv_it = universe.index_of.find(invert(rep));
    if (inv_it != universe.index_of.end()) {
      std::size_t inv_cls = universe.class_id[inv_it->second];
      bool covered = false;
      for (std::size_t c : chosen_classes)
        if (c == inv_cls || c == cls.id) covered = true;
      if (covered) continue;
    }
    chosen_classes.push_back(cls.id);
    witnesses.push_back(rep);
  }
  if (witnesses.empty())
    return Inconclusive{"no certified-nontrivial witnesses in the radius ball"};

  nlo_detail::ConeSearch search(P, universe, budget);
  auto tree = search.refute(witnesses);
  if (!tree) return Inconclusive{"a sign assignment on the witness ball survived"};

  NloCertificate cert;
  std::size_t depth = nlo_detail::tree_depth(*tree);
  cert.witness.assign(witnesses.begin(), witnesses.begin() + static_cast<std::ptrdiff_t>(depth));
  cert.tree = std::move(*tree);
  return cert;
}

}  // namespace branchorder
