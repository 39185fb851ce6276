#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <branchorder/word.hpp>

namespace branchorder {

// Finite presentation <generators | relators> with relators stored in the
// r = 1 convention. Relators are cyclically reduced at construction; the
// forms as given are retained alongside.
class Presentation {
 public:
  Presentation(Alphabet alphabet, std::vector<Word> relators, std::string label)
      : alphabet_(std::move(alphabet)),
        given_relators_(std::move(relators)),
        label_(std::move(label)) {
    relators_.reserve(given_relators_.size());
    for (const auto& r : given_relators_) {
      validate_word(r);
      relators_.push_back(cyclically_reduce(r));
    }
  }

  const Alphabet& alphabet() const { return alphabet_; }
  int generator_count() const { return alphabet_.size(); }

  // Cyclically reduced relators; index space used by proof steps.
  const std::vector<Word>& relators() const { return relators_; }

  // Relators exactly as supplied (freely reduced only).
  const std::vector<Word>& relators_as_given() const { return given_relators_; }

  const std::string& label() const { return label_; }

  void validate_word(const Word& w) const {
    for (const auto& s : w.syllables()) {
      if (s.gen < 0 || s.gen >= alphabet_.size())
        throw std::invalid_argument("word references generator " + std::to_string(s.gen) +
                                    " outside alphabet of size " + std::to_string(alphabet_.size()));
    }
  }

  bool word_fits(const Word& w) const {
    return w.max_generator() < alphabet_.size();
  }

 private:
  Alphabet alphabet_;
  std::vector<Word> relators_;
  std::vector<Word> given_relators_;
  std::string label_;
};

}  // namespace branchorder
