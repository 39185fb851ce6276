#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <unordered_map>
#include <vector>

#include <branchorder/budget.hpp>
#include <branchorder/coset.hpp>
#include <branchorder/homology.hpp>
#include <branchorder/presentation.hpp>
#include <branchorder/prove.hpp>
#include <branchorder/word.hpp>

namespace branchorder {

// A proof-backed partial picture of the group on a finite ball of elements.
// Two representatives are in the same class only when an explicit replayable
// proof chain connects them; anything unproven is treated as unknown, never
// as distinct and never as equal.
struct ElementUniverse {
  std::vector<Word> representatives;  // all reduced words of letter length <= radius, lenlex
  std::vector<std::size_t> class_id;  // union-find root per representative

  struct ProvenPair {
    std::size_t from = 0;
    std::size_t to = 0;
    EqualityProof proof;  // start = representatives[from], end = representatives[to]
  };
  std::vector<ProvenPair> equal_pairs;

  std::vector<std::size_t> trivial_set;  // indices proven equal to the identity
  std::unordered_map<Word, std::size_t, WordHash> index_of;

  std::size_t trivial_class = 0;  // class of the identity word

  std::size_t find_class(std::size_t i) const { return class_id[i]; }

  // Lenlex-least member of each class, with member lists, classes ordered by
  // their representative.
  struct ClassView {
    std::size_t id;
    std::size_t representative;  // index into representatives
    std::vector<std::size_t> members;
  };
  std::vector<ClassView> classes() const {
    std::map<std::size_t, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < representatives.size(); ++i) buckets[class_id[i]].push_back(i);
    std::vector<ClassView> out;
    for (auto& [root, members] : buckets)
      out.push_back(ClassView{root, members.front(), std::move(members)});
    return out;
  }
};

namespace universe_detail {

// All freely reduced words of letter length <= radius, in lenlex order.
inline std::vector<Word> ball(int generator_count, std::size_t radius) {
  std::vector<Word> all{Word()};
  std::vector<Word> layer{Word()};
  for (std::size_t r = 1; r <= radius; ++r) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (int g = 0; g < generator_count; ++g) {
        for (std::int64_t e : {std::int64_t{-1}, std::int64_t{1}}) {
          if (!w.empty()) {
            const Syllable& last = w[w.size() - 1];
            std::int64_t sign = last.exp > 0 ? 1 : -1;
            if (last.gen == g && sign == -e) continue;  // would cancel
          }
          next.push_back(concat(w, word_of({{g, e}})));
        }
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::sort(all.begin(), all.end(),
            [](const Word& a, const Word& b) { return lenlex_less(a, b); });
  return all;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // Smaller index wins, keeping lenlex-least representatives canonical.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace universe_detail

// Builds the radius-ball universe. Equality knowledge comes from three
// sources, all proof-backed: greedy rewriting descents, pair proofs guided by
// a bounded coset enumeration when it completes, and pair proofs within
// abelianization buckets otherwise.
inline ElementUniverse build_universe(const Presentation& P, std::size_t radius,
                                      const SearchBudget& budget = {}) {
  budget.validate();
  ElementUniverse u;
  u.representatives = universe_detail::ball(P.generator_count(), radius);
  const std::size_t n = u.representatives.size();
  for (std::size_t i = 0; i < n; ++i) u.index_of.emplace(u.representatives[i], i);

  universe_detail::UnionFind uf(n);
  MoveTable moves(P);

  SearchBudget per_pair = budget;
  per_pair.max_states = std::max<std::size_t>(2000, budget.max_states / 100);

  auto connect = [&](std::size_t from, std::size_t to, const SearchBudget& b) {
    if (uf.find(from) == uf.find(to)) return;
    auto res = prove_equal(P, u.representatives[from], u.representatives[to], b, moves);
    if (auto* proof = std::get_if<EqualityProof>(&res)) {
      uf.unite(from, to);
      u.equal_pairs.push_back(ElementUniverse::ProvenPair{from, to, std::move(*proof)});
    }
  };

  // Descent pass: words sharing a greedy minimum are provably equal.
  for (std::size_t i = 0; i < n; ++i) {
    auto [min_word, steps] = detail::descend(u.representatives[i], moves, budget);
    if (min_word == u.representatives[i]) continue;
    auto it = u.index_of.find(min_word);
    if (it == u.index_of.end()) continue;  // cannot happen: descents shrink
    if (uf.unite(i, it->second))
      u.equal_pairs.push_back(ElementUniverse::ProvenPair{
          i, it->second, EqualityProof{u.representatives[i], min_word, steps}});
  }

  // Oracle-guided pass: candidate-equal groups from a completed enumeration,
  // or same-H1-image buckets as a sound negative filter.
  SearchBudget tc_budget = budget;
  tc_budget.max_cosets = std::min<std::size_t>(budget.max_cosets, 50'000);
  CosetTable table = todd_coxeter(P, tc_budget);

  std::map<std::vector<std::size_t>, std::vector<std::size_t>> trace_groups;
  if (table.complete()) {
    for (std::size_t i = 0; i < n; ++i)
      trace_groups[{trace_coset(table, 0, u.representatives[i])}].push_back(i);
  } else {
    H1ImageTester h1(P);
    std::map<std::vector<std::string>, std::vector<std::size_t>> image_groups;
    // Key: canonical H1 coordinates of the exponent vector.
    auto decomposition = smith_normal_form_decomposed(abelianize(P));
    const auto& V = decomposition.V;
    const auto& factors = decomposition.result.invariant_factors;
    const std::size_t cols = static_cast<std::size_t>(P.generator_count());
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<mpz_class> x(cols, 0);
      for (const auto& s : u.representatives[i].syllables())
        x[static_cast<std::size_t>(s.gen)] += s.exp;
      std::vector<std::string> key;
      for (std::size_t j = 0; j < cols; ++j) {
        mpz_class y = 0;
        for (std::size_t k = 0; k < cols; ++k) y += x[k] * V[k][j];
        if (j < factors.size()) {
          mpz_class m;
          mpz_mod(m.get_mpz_t(), y.get_mpz_t(), factors[j].get_mpz_t());
          key.push_back(m.get_str());
        } else {
          key.push_back(y.get_str());
        }
      }
      image_groups[std::move(key)].push_back(i);
    }
    std::size_t counter = 0;
    for (auto& [key, members] : image_groups) trace_groups[{counter++}] = std::move(members);
  }

  for (const auto& [key, members] : trace_groups) {
    if (members.size() < 2) continue;
    for (std::size_t j = 1; j < members.size(); ++j) connect(members[j], members[0], per_pair);
  }

  for (std::size_t i = 0; i < n; ++i) u.class_id.push_back(uf.find(i));
  std::size_t identity_index = u.index_of.at(Word());
  u.trivial_class = u.class_id[identity_index];
  for (std::size_t i = 0; i < n; ++i)
    if (u.class_id[i] == u.trivial_class && i != identity_index) u.trivial_set.push_back(i);
  return u;
}

}  // namespace branchorder
