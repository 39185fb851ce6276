#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <branchorder/presentation.hpp>
#include <branchorder/prove.hpp>
#include <branchorder/word.hpp>

namespace branchorder {

// Rewrites w through generator images (one image word per source generator).
inline Word apply_substitution(const Word& w, const std::vector<Word>& images) {
  WordBuilder b;
  for (const auto& s : w.syllables()) {
    const Word& image = images.at(static_cast<std::size_t>(s.gen));
    const Word p = power(image, s.exp);
    b.push_word(p);
  }
  return b.take();
}

struct TietzeReport {
  bool verified = false;
  // On failure: which relator stalled, in which direction (0: raw relator
  // checked in the target, 1: target relator checked in the image).
  std::size_t failed_relator = 0;
  int failed_direction = 0;
};

// Certifies that P_raw and P_std present the same group, given images of the
// raw generators in the standard ones. Both inclusions of normal closures are
// proven by bounded rewriting:
//   (a) every raw relator, after substitution, is proven trivial in P_std;
//   (b) every P_std relator is proven trivial in the substituted image of
//       P_raw.
// Verified requires both directions; anything else is Unknown, never a
// disproof.
inline TietzeReport check_tietze_equivalence(const Presentation& P_raw,
                                             const Presentation& P_std,
                                             const std::vector<Word>& images,
                                             const SearchBudget& budget = {}) {
  if (images.size() != static_cast<std::size_t>(P_raw.generator_count()))
    throw std::invalid_argument("substitution must cover every raw generator");
  for (const auto& img : images) P_std.validate_word(img);

  MoveTable std_moves(P_std);
  for (std::size_t i = 0; i < P_raw.relators().size(); ++i) {
    Word image = apply_substitution(P_raw.relators()[i], images);
    if (image.empty()) continue;
    if (!proved(prove_equal(P_std, image, Word(), budget, std_moves)))
      return TietzeReport{false, i, 0};
  }

  std::vector<Word> image_relators;
  for (const auto& r : P_raw.relators())
    image_relators.push_back(apply_substitution(r, images));
  Presentation image_presentation(P_std.alphabet(), std::move(image_relators),
                                  "substituted-image of " + P_raw.label());
  MoveTable image_moves(image_presentation);
  for (std::size_t i = 0; i < P_std.relators().size(); ++i) {
    const Word& r = P_std.relators()[i];
    if (r.empty()) continue;
    if (!proved(prove_equal(image_presentation, r, Word(), budget, image_moves)))
      return TietzeReport{false, i, 1};
  }
  return TietzeReport{true, 0, 0};
}

// Identity substitution on P's own alphabet.
inline std::vector<Word> identity_substitution(const Presentation& P) {
  std::vector<Word> images;
  for (int g = 0; g < P.generator_count(); ++g) images.push_back(word_of({{g, 1}}));
  return images;
}

}  // namespace branchorder
