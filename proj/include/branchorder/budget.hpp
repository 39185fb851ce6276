#pragma once

#include <cstddef>
#include <stdexcept>

namespace branchorder {

// Resource bounds shared by the word-problem search, coset enumeration and
// the positive-cone search. All fields must stay positive.
struct SearchBudget {
  std::size_t max_states = 200'000;      // visited states in prove_equal
  std::size_t max_word_length = 64;      // syllables per intermediate word
  std::size_t max_cosets = 2'000'000;    // cosets ever defined in enumeration
  std::size_t max_witnesses = 12;        // branching elements in cone search
  std::size_t max_chain_factors = 8;     // factors in a contradiction chain

  SearchBudget scaled_states(std::size_t factor) const {
    SearchBudget b = *this;
    b.max_states *= factor;
    return b;
  }

  void validate() const {
    if (max_states == 0 || max_word_length == 0 || max_cosets == 0 ||
        max_witnesses == 0 || max_chain_factors == 0)
      throw std::invalid_argument("search budget fields must be positive");
  }
};

}  // namespace branchorder
