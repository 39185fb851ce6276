#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <branchorder/presentation.hpp>
#include <branchorder/word.hpp>

namespace branchorder {

// Parameters of the link family L(k_1,...,k_n): n >= 1, k unrestricted.
struct FamilyParams {
  int n = 1;
  std::vector<std::int64_t> k;

  void validate() const {
    if (n < 1) throw std::invalid_argument("family requires n >= 1");
    if (static_cast<int>(k.size()) != n)
      throw std::invalid_argument("k must list exactly n integers");
  }

  // 1-based index arithmetic modulo n (index 0 means n, index n+1 means 1).
  int wrap(int i) const {
    int r = (i - 1) % n;
    if (r < 0) r += n;
    return r + 1;
  }
};

// Hub-and-cycle weighted graph underlying the presentation: a 2n-cycle whose
// edge weights alternate k_i, +1, plus a hub joined to every cycle vertex
// with weights alternating -2 (odd vertices), +1 (even vertices).
struct DecompositionGraphSpec {
  int cycle_vertex_count = 0;                   // 2n, numbered 1..2n; hub is 0
  std::vector<std::int64_t> cycle_edge_weights;  // edge (2i-1, 2i): k_i; (2i, 2i+1): +1
  std::vector<std::int64_t> hub_edge_weights;    // edge (0, v) for v = 1..2n
};

// Marks the instance k = (-k,...,-k) as the n-fold cyclic branched cover of
// the pretzel knot P(3,-3,-2k-1). Metadata only; nothing is re-proved.
struct PretzelCoverTag {
  int n = 0;
  std::int64_t k = 0;
};

inline DecompositionGraphSpec build_graph_spec(const FamilyParams& params) {
  params.validate();
  DecompositionGraphSpec spec;
  spec.cycle_vertex_count = 2 * params.n;
  for (int i = 1; i <= params.n; ++i) {
    spec.cycle_edge_weights.push_back(params.k[static_cast<std::size_t>(i - 1)]);
    spec.cycle_edge_weights.push_back(1);
  }
  for (int v = 1; v <= 2 * params.n; ++v)
    spec.hub_edge_weights.push_back(v % 2 == 1 ? -2 : 1);
  return spec;
}

namespace family_detail {

inline std::vector<std::string> indexed_names(std::initializer_list<const char*> stems, int n) {
  std::vector<std::string> names;
  for (const char* stem : stems)
    for (int i = 1; i <= n; ++i) names.push_back(std::string(stem) + std::to_string(i));
  return names;
}

}  // namespace family_detail

// Generator layout of the raw presentation: edge generators e_i, f_i, g_i,
// b_i then region generators a_i, c_i, each block indexed 1..n.
struct RawGeneratorIds {
  int n;
  int e(int i) const { return 0 * n + i - 1; }
  int f(int i) const { return 1 * n + i - 1; }
  int g(int i) const { return 2 * n + i - 1; }
  int b(int i) const { return 3 * n + i - 1; }
  int a(int i) const { return 4 * n + i - 1; }
  int c(int i) const { return 5 * n + i - 1; }
};

// Generator layout of the simplified presentation: a_1..a_n, b_1..b_n.
struct StandardGeneratorIds {
  int n;
  int a(int i) const { return i - 1; }
  int b(int i) const { return n + i - 1; }
};

// Raw presentation read off the decomposition graph: 6n generators, and for
// each index i the local edge relations e_i a_i^{-k_i}, b_i c_i,
// f_i (a_i^{-1} c_i)^2, g_i a_i^{-1} c_{i-1} together with the global cycle
// relations f_i^{-1} e_i g_i and f_i^{-1} b_i g_{i+1}, subscripts modulo n.
inline Presentation build_raw_presentation(const FamilyParams& params) {
  params.validate();
  const int n = params.n;
  RawGeneratorIds id{n};
  auto ki = [&](int i) { return params.k[static_cast<std::size_t>(params.wrap(i) - 1)]; };

  std::vector<Word> relators;
  for (int i = 1; i <= n; ++i)
    relators.push_back(word_of({{id.e(i), 1}, {id.a(i), -ki(i)}}));
  for (int i = 1; i <= n; ++i)
    relators.push_back(word_of({{id.b(i), 1}, {id.c(i), 1}}));
  for (int i = 1; i <= n; ++i)
    relators.push_back(word_of(
        {{id.f(i), 1}, {id.a(i), -1}, {id.c(i), 1}, {id.a(i), -1}, {id.c(i), 1}}));
  for (int i = 1; i <= n; ++i)
    relators.push_back(word_of({{id.g(i), 1}, {id.a(i), -1}, {id.c(params.wrap(i - 1)), 1}}));
  for (int i = 1; i <= n; ++i)
    relators.push_back(word_of({{id.f(i), -1}, {id.e(i), 1}, {id.g(i), 1}}));
  for (int i = 1; i <= n; ++i)
    relators.push_back(word_of({{id.f(i), -1}, {id.b(i), 1}, {id.g(params.wrap(i + 1)), 1}}));

  Alphabet alphabet(family_detail::indexed_names({"e", "f", "g", "b", "a", "c"}, n));
  return Presentation(std::move(alphabet), std::move(relators), "raw-brunner");
}

// Simplified presentation <a_i, b_i | a_{i+1} = b_i^-1 a_i b_i a_i,
// a_i^{k_i} = b_i a_i b_i b_{i-1}^-1>, subscripts modulo n.
inline Presentation build_standard_presentation(const FamilyParams& params) {
  params.validate();
  const int n = params.n;
  StandardGeneratorIds id{n};

  std::vector<Word> relators;
  for (int i = 1; i <= n; ++i)
    relators.push_back(word_of({{id.a(params.wrap(i + 1)), -1},
                                {id.b(i), -1},
                                {id.a(i), 1},
                                {id.b(i), 1},
                                {id.a(i), 1}}));
  for (int i = 1; i <= n; ++i)
    relators.push_back(word_of({{id.a(i), -params.k[static_cast<std::size_t>(i - 1)]},
                                {id.b(i), 1},
                                {id.a(i), 1},
                                {id.b(i), 1},
                                {id.b(params.wrap(i - 1)), -1}}));

  Alphabet alphabet(family_detail::indexed_names({"a", "b"}, n));
  return Presentation(std::move(alphabet), std::move(relators), "standard");
}

// Images, over the standard alphabet, of every raw generator under the
// elimination e_i -> a_i^{k_i}, c_i -> b_i^-1, f_i -> (a_i^-1 b_i^-1)^-2,
// g_i -> b_{i-1} a_i; a_i and b_i map to themselves. Indexed by raw id.
inline std::vector<Word> elimination_substitution(const FamilyParams& params) {
  params.validate();
  const int n = params.n;
  RawGeneratorIds raw{n};
  StandardGeneratorIds std_id{n};

  std::vector<Word> images(static_cast<std::size_t>(6 * n));
  for (int i = 1; i <= n; ++i) {
    images[static_cast<std::size_t>(raw.e(i))] =
        word_of({{std_id.a(i), params.k[static_cast<std::size_t>(i - 1)]}});
    images[static_cast<std::size_t>(raw.c(i))] = word_of({{std_id.b(i), -1}});
    images[static_cast<std::size_t>(raw.f(i))] = word_of(
        {{std_id.b(i), 1}, {std_id.a(i), 1}, {std_id.b(i), 1}, {std_id.a(i), 1}});
    images[static_cast<std::size_t>(raw.g(i))] =
        word_of({{std_id.b(params.wrap(i - 1)), 1}, {std_id.a(i), 1}});
    images[static_cast<std::size_t>(raw.a(i))] = word_of({{std_id.a(i), 1}});
    images[static_cast<std::size_t>(raw.b(i))] = word_of({{std_id.b(i), 1}});
  }
  return images;
}

// Present iff all k_i agree; tags the n-fold cyclic cover instance.
inline std::optional<PretzelCoverTag> pretzel_cover_tag(const FamilyParams& params) {
  params.validate();
  for (const auto& v : params.k)
    if (v != params.k.front()) return std::nullopt;
  return PretzelCoverTag{params.n, -params.k.front()};
}

}  // namespace branchorder
