#pragma once

#include <string>
#include <vector>

#include <branchorder/homology.hpp>
#include <branchorder/orderability.hpp>
#include <branchorder/presentation.hpp>
#include <branchorder/proof.hpp>
#include <branchorder/word.hpp>

namespace branchorder {

struct VerifyOutcome {
  bool accepted = false;
  std::string reason;  // empty on accept; names the first failing check
  std::string path;    // branch signs from the root, e.g. "+-"

  static VerifyOutcome accept() { return VerifyOutcome{true, "", ""}; }
  static VerifyOutcome reject(std::string reason, std::string path = "") {
    return VerifyOutcome{false, std::move(reason), std::move(path)};
  }
};

namespace verify_detail {

// Walks the decision tree, carrying the set of words available as positives
// on the current branch. Checks totality, leaf structure, and replays every
// leaf proof from scratch; nothing from the search side is reused.
inline VerifyOutcome check_tree(const Presentation& P, const std::vector<Word>& witness,
                                const CertTree& tree, std::size_t depth,
                                std::vector<Word>& positives, std::string& path) {
  if (tree.is_leaf()) {
    const CertLeaf& leaf = *tree.leaf;
    if (leaf.chain.empty()) return VerifyOutcome::reject("empty contradiction chain", path);
    WordBuilder b;
    for (const auto& c : leaf.chain) {
      bool available = false;
      for (const auto& p : positives)
        if (p == c) {
          available = true;
          break;
        }
      if (!available)
        return VerifyOutcome::reject("chain element is not a positive on this branch", path);
      b.push_word(c);
    }
    if (b.take() != leaf.proof.start)
      return VerifyOutcome::reject("chain product does not match proof start", path);
    if (!leaf.proof.end.empty())
      return VerifyOutcome::reject("proof must end at the identity", path);
    if (!replay_proof(P, leaf.proof))
      return VerifyOutcome::reject("leaf proof fails to replay", path);
    return VerifyOutcome::accept();
  }
  if (!tree.node) return VerifyOutcome::reject("malformed tree entry", path);
  if (depth >= witness.size())
    return VerifyOutcome::reject("tree deeper than the witness list", path);
  if (tree.node->element != witness[depth])
    return VerifyOutcome::reject("node element differs from witness at its depth", path);

  const Word& w = witness[depth];
  for (int sign = 0; sign < 2; ++sign) {
    positives.push_back(sign == 0 ? w : invert(w));
    path.push_back(sign == 0 ? '+' : '-');
    auto sub = check_tree(P, witness, sign == 0 ? tree.node->positive : tree.node->negative,
                          depth + 1, positives, path);
    if (!sub.accepted) return sub;
    path.pop_back();
    positives.pop_back();
  }
  return VerifyOutcome::accept();
}

}  // namespace verify_detail

// Independent check of a non-left-orderability certificate against P:
//  - every witness must be certifiably nontrivial (nonzero H1 image), so the
//    sign case split is exhaustive for any left order;
//  - the tree must branch on witness[depth] at every depth and cover both
//    signs everywhere;
//  - every leaf chain must consist of branch positives whose reduced product
//    carries a replaying proof of triviality.
// Accepting certifies that the presented group admits no left order.
inline VerifyOutcome verify_certificate(const Presentation& P, const NloCertificate& cert) {
  if (cert.witness.empty()) return VerifyOutcome::reject("certificate lists no witnesses");
  for (const auto& w : cert.witness) {
    if (w.empty()) return VerifyOutcome::reject("identity listed as a witness");
    if (!P.word_fits(w)) return VerifyOutcome::reject("witness uses foreign generators");
  }
  H1ImageTester h1(P);
  for (const auto& w : cert.witness)
    if (!h1.nontrivial_in_h1(w))
      return VerifyOutcome::reject("witness not certified nontrivial by abelianization");

  std::vector<Word> positives;
  std::string path;
  return verify_detail::check_tree(P, cert.witness, cert.tree, 0, positives, path);
}

}  // namespace branchorder
