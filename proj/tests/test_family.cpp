#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include <branchorder/family.hpp>

using namespace branchorder;

TEST_CASE("graph spec alternates the hub and cycle weights") {
  FamilyParams params{4, {3, -1, 0, 7}};
  auto spec = build_graph_spec(params);
  CHECK(spec.cycle_vertex_count == 8);
  CHECK(spec.cycle_edge_weights ==
        std::vector<std::int64_t>{3, 1, -1, 1, 0, 1, 7, 1});
  CHECK(spec.hub_edge_weights == std::vector<std::int64_t>{-2, 1, -2, 1, -2, 1, -2, 1});
}

TEST_CASE("graph spec degenerates cleanly at n = 1") {
  auto spec = build_graph_spec(FamilyParams{1, {5}});
  CHECK(spec.cycle_vertex_count == 2);
  CHECK(spec.cycle_edge_weights == std::vector<std::int64_t>{5, 1});
  CHECK(spec.hub_edge_weights == std::vector<std::int64_t>{-2, 1});
}

TEST_CASE("n = 0 is rejected everywhere") {
  FamilyParams bad{0, {}};
  CHECK_THROWS_AS(build_graph_spec(bad), std::invalid_argument);
  CHECK_THROWS_AS(build_raw_presentation(bad), std::invalid_argument);
  CHECK_THROWS_AS(build_standard_presentation(bad), std::invalid_argument);
  CHECK_THROWS_AS(elimination_substitution(bad), std::invalid_argument);
  CHECK_THROWS_AS(build_raw_presentation(FamilyParams{2, {1}}), std::invalid_argument);
}

TEST_CASE("raw presentation counts and the n = 1 instance") {
  Presentation P = build_raw_presentation(FamilyParams{1, {3}});
  CHECK(P.generator_count() == 6);
  CHECK(P.relators().size() == 6);

  RawGeneratorIds id{1};
  // e_1 = a_1^3 stored as e_1 a_1^-3.
  CHECK(P.relators_as_given()[0] == word_of({{id.e(1), 1}, {id.a(1), -3}}));
  // Wrapped subscripts: g_1 a_1^-1 c_1 and f_1^-1 b_1 g_1.
  CHECK(P.relators_as_given()[3] == word_of({{id.g(1), 1}, {id.a(1), -1}, {id.c(1), 1}}));
  CHECK(P.relators_as_given()[5] == word_of({{id.f(1), -1}, {id.b(1), 1}, {id.g(1), 1}}));

  Presentation P3 = build_raw_presentation(FamilyParams{3, {-1, -1, -1}});
  CHECK(P3.generator_count() == 18);
  CHECK(P3.relators().size() == 18);
}

TEST_CASE("zero twist parameter leaves the bare edge generator relator") {
  Presentation P = build_raw_presentation(FamilyParams{2, {0, 0}});
  RawGeneratorIds id{2};
  CHECK(P.relators_as_given()[0] == word_of({{id.e(1), 1}}));
  CHECK(P.relators_as_given()[1] == word_of({{id.e(2), 1}}));
}

TEST_CASE("standard presentation matches the simplified relations") {
  Presentation P = build_standard_presentation(FamilyParams{2, {0, 0}});
  CHECK(P.generator_count() == 4);
  CHECK(P.relators().size() == 4);
  StandardGeneratorIds id{2};
  CHECK(P.alphabet().names() == std::vector<std::string>{"a1", "a2", "b1", "b2"});
  // a_2^-1 b_1^-1 a_1 b_1 a_1 and its cyclic sibling.
  CHECK(P.relators_as_given()[0] ==
        word_of({{id.a(2), -1}, {id.b(1), -1}, {id.a(1), 1}, {id.b(1), 1}, {id.a(1), 1}}));
  CHECK(P.relators_as_given()[1] ==
        word_of({{id.a(1), -1}, {id.b(2), -1}, {id.a(2), 1}, {id.b(2), 1}, {id.a(2), 1}}));
  // k = 0 drops the power: b_1 a_1 b_1 b_2^-1.
  CHECK(P.relators_as_given()[2] ==
        word_of({{id.b(1), 1}, {id.a(1), 1}, {id.b(1), 1}, {id.b(2), -1}}));
}

TEST_CASE("standard presentation at n = 1 wraps onto itself") {
  Presentation P = build_standard_presentation(FamilyParams{1, {4}});
  StandardGeneratorIds id{1};
  CHECK(P.generator_count() == 2);
  REQUIRE(P.relators().size() == 2);
  CHECK(P.relators_as_given()[0] ==
        word_of({{id.a(1), -1}, {id.b(1), -1}, {id.a(1), 1}, {id.b(1), 1}, {id.a(1), 1}}));
  // a_1^-4 b_1 a_1 b_1 b_1^-1 reduces to a_1^-4 b_1 a_1.
  CHECK(P.relators_as_given()[1] == word_of({{id.a(1), -4}, {id.b(1), 1}, {id.a(1), 1}}));
}

TEST_CASE("elimination substitution images") {
  FamilyParams params{2, {0, 5}};
  auto images = elimination_substitution(params);
  RawGeneratorIds raw{2};
  StandardGeneratorIds std_id{2};
  // g_1 -> b_2 a_1 (c_0 = c_2).
  CHECK(images[static_cast<std::size_t>(raw.g(1))] ==
        word_of({{std_id.b(2), 1}, {std_id.a(1), 1}}));
  // f_1 -> b_1 a_1 b_1 a_1.
  CHECK(images[static_cast<std::size_t>(raw.f(1))] ==
        word_of({{std_id.b(1), 1}, {std_id.a(1), 1}, {std_id.b(1), 1}, {std_id.a(1), 1}}));
  // e_1 with k_1 = 0 -> identity; e_2 -> a_2^5.
  CHECK(images[static_cast<std::size_t>(raw.e(1))].empty());
  CHECK(images[static_cast<std::size_t>(raw.e(2))] == word_of({{std_id.a(2), 5}}));
  CHECK(images[static_cast<std::size_t>(raw.a(2))] == word_of({{std_id.a(2), 1}}));
  CHECK(images[static_cast<std::size_t>(raw.b(1))] == word_of({{std_id.b(1), 1}}));
}

namespace {

// Renames generator index i to i + 1 (mod n) in a standard-presentation word.
Word shift_indices(const Word& w, int n) {
  FamilyParams helper{n, std::vector<std::int64_t>(static_cast<std::size_t>(n), 0)};
  StandardGeneratorIds id{n};
  std::vector<Syllable> out;
  for (const auto& s : w.syllables()) {
    int idx = s.gen % n + 1;  // block layout: a block then b block
    int shifted = helper.wrap(idx + 1);
    int base = s.gen < n ? id.a(shifted) : id.b(shifted);
    out.push_back({base, s.exp});
  }
  return free_reduce(out);
}

std::vector<Word> sorted_relators(const std::vector<Word>& relators) {
  std::vector<Word> out = relators;
  std::sort(out.begin(), out.end(),
            [](const Word& a, const Word& b) { return lenlex_less(a, b); });
  return out;
}

}  // namespace

TEST_CASE("cyclic rotation of k matches generator renaming") {
  Presentation P = build_standard_presentation(FamilyParams{3, {2, -1, 0}});
  Presentation Q = build_standard_presentation(FamilyParams{3, {-1, 0, 2}});

  std::vector<Word> renamed;
  for (const auto& r : Q.relators()) renamed.push_back(shift_indices(r, 3));
  CHECK(sorted_relators(renamed) == sorted_relators(P.relators()));
}

namespace {

// Same renaming for the raw layout: six blocks of n indexed generators.
Word shift_raw_indices(const Word& w, int n) {
  FamilyParams helper{n, std::vector<std::int64_t>(static_cast<std::size_t>(n), 0)};
  std::vector<Syllable> out;
  for (const auto& s : w.syllables()) {
    int block = s.gen / n;
    int idx = s.gen % n + 1;
    out.push_back({block * n + helper.wrap(idx + 1) - 1, s.exp});
  }
  return free_reduce(out);
}

}  // namespace

TEST_CASE("cyclic rotation of k matches renaming in the raw presentation") {
  Presentation P = build_raw_presentation(FamilyParams{3, {2, -1, 0}});
  Presentation Q = build_raw_presentation(FamilyParams{3, {-1, 0, 2}});

  std::vector<Word> renamed;
  for (const auto& r : Q.relators()) renamed.push_back(shift_raw_indices(r, 3));
  CHECK(sorted_relators(renamed) == sorted_relators(P.relators()));
}

TEST_CASE("pretzel cover tag marks constant parameter vectors") {
  auto tag = pretzel_cover_tag(FamilyParams{3, {-2, -2, -2}});
  REQUIRE(tag.has_value());
  CHECK(tag->n == 3);
  CHECK(tag->k == 2);
  CHECK_FALSE(pretzel_cover_tag(FamilyParams{2, {1, 2}}).has_value());
}
