#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <branchorder/presentation.hpp>
#include <branchorder/word.hpp>

namespace branchorder {

// One rewriting move: insert a cyclic rotation of relator[relator] (inverted
// first when `inverted`) at syllable boundary `position` of the current word,
// then freely reduce. `rotation` is a letter offset into the relator.
struct ProofStep {
  std::size_t position = 0;
  std::size_t relator = 0;
  std::size_t rotation = 0;
  bool inverted = false;
  friend bool operator==(const ProofStep&, const ProofStep&) = default;
};

// Replayable witness that start = end in the group presented by P: each step
// inserts a word equal to identity, so the group element never changes.
struct EqualityProof {
  Word start;
  Word end;
  std::vector<ProofStep> steps;
};

// The word a step inserts, or nullopt if the step is out of range for P.
inline std::optional<Word> step_insertion(const Presentation& P, const ProofStep& step) {
  if (step.relator >= P.relators().size()) return std::nullopt;
  Word base = P.relators()[step.relator];
  if (base.empty()) return std::nullopt;
  if (step.inverted) base = invert(base);
  if (step.rotation >= base.letter_length()) return std::nullopt;
  return rotate_letters(base, step.rotation);
}

inline std::optional<Word> apply_step(const Presentation& P, const Word& w, const ProofStep& step) {
  if (step.position > w.size()) return std::nullopt;
  auto ins = step_insertion(P, step);
  if (!ins) return std::nullopt;
  return insert_at(w, step.position, *ins);
}

// Replays steps from `start`; nullopt if any step is malformed.
inline std::optional<Word> replay_steps(const Presentation& P, const Word& start,
                                        const std::vector<ProofStep>& steps) {
  Word w = start;
  for (const auto& s : steps) {
    auto next = apply_step(P, w, s);
    if (!next) return std::nullopt;
    w = *next;
  }
  return w;
}

// True iff the proof replays from start and terminates exactly at end.
inline bool replay_proof(const Presentation& P, const EqualityProof& proof) {
  if (!P.word_fits(proof.start) || !P.word_fits(proof.end)) return false;
  auto w = replay_steps(P, proof.start, proof.steps);
  return w && *w == proof.end;
}

}  // namespace branchorder
