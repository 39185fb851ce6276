#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace branchorder {

// A group generator: dense id plus display name ("a1", "b2", "e3", ...).
struct Generator {
  int id = 0;
  std::string name;
  friend bool operator==(const Generator&, const Generator&) = default;
};

// Ordered set of generator names; the id of a generator is its position.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
      if (names_[i].empty()) throw std::invalid_argument("empty generator name");
      if (!ids_.emplace(names_[i], i).second)
        throw std::invalid_argument("duplicate generator name: " + names_[i]);
    }
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int id) const { return names_.at(static_cast<std::size_t>(id)); }
  Generator generator(int id) const { return Generator{id, name(id)}; }

  std::optional<int> id_of(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const Alphabet& lhs, const Alphabet& rhs) {
    return lhs.names_ == rhs.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
};

// One syllable g^e; inside a Word the exponent is never zero.
struct Syllable {
  int gen = 0;
  std::int64_t exp = 0;
  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

class WordBuilder;

// Freely reduced word: adjacent syllables have distinct generators, no zero
// exponents. The empty word is the identity. Construct via free_reduce() or
// WordBuilder; the invariant cannot be broken from outside.
class Word {
 public:
  Word() = default;

  const std::vector<Syllable>& syllables() const { return syllables_; }
  std::size_t size() const { return syllables_.size(); }
  bool empty() const { return syllables_.empty(); }
  const Syllable& operator[](std::size_t i) const { return syllables_[i]; }

  // Number of letters: sum of |exponent| over syllables.
  std::uint64_t letter_length() const {
    std::uint64_t n = 0;
    for (const auto& s : syllables_) n += static_cast<std::uint64_t>(std::llabs(s.exp));
    return n;
  }

  int max_generator() const {
    int m = -1;
    for (const auto& s : syllables_) m = std::max(m, s.gen);
    return m;
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  struct ReducedTag {};
  Word(std::vector<Syllable> s, ReducedTag) : syllables_(std::move(s)) {}
  std::vector<Syllable> syllables_;
  friend class WordBuilder;
};

// Accumulates syllables with on-the-fly cancellation (stack discipline), so
// the result is freely reduced no matter the input order.
class WordBuilder {
 public:
  void push(int gen, std::int64_t exp) {
    if (exp == 0) return;
    if (!stack_.empty() && stack_.back().gen == gen) {
      stack_.back().exp += exp;
      if (stack_.back().exp == 0) stack_.pop_back();
      return;
    }
    stack_.push_back(Syllable{gen, exp});
  }

  void push(const Syllable& s) { push(s.gen, s.exp); }

  void push_word(const Word& w) {
    for (const auto& s : w.syllables()) push(s);
  }

  void push_inverse(const Word& w) {
    const auto& sy = w.syllables();
    for (auto it = sy.rbegin(); it != sy.rend(); ++it) push(it->gen, -it->exp);
  }

  Word take() { return Word(std::move(stack_), Word::ReducedTag{}); }

 private:
  std::vector<Syllable> stack_;
};

// Unique freely reduced form of a raw syllable sequence; zero exponents are
// dropped, adjacent equal generators merged, full cancellations removed.
inline Word free_reduce(const std::vector<Syllable>& raw) {
  WordBuilder b;
  for (const auto& s : raw) b.push(s);
  return b.take();
}

inline Word word_of(std::initializer_list<Syllable> raw) {
  return free_reduce(std::vector<Syllable>(raw));
}

// Freely reduced product u * v.
inline Word concat(const Word& u, const Word& v) {
  WordBuilder b;
  b.push_word(u);
  b.push_word(v);
  return b.take();
}

// Reversed syllables with negated exponents.
inline Word invert(const Word& w) {
  WordBuilder b;
  b.push_inverse(w);
  return b.take();
}

// by^-1 * w * by, freely reduced.
inline Word conjugate(const Word& w, const Word& by) {
  WordBuilder b;
  b.push_inverse(by);
  b.push_word(w);
  b.push_word(by);
  return b.take();
}

inline Word power(const Word& w, std::int64_t m) {
  if (m == 0 || w.empty()) return Word();
  if (w.size() == 1) return word_of({Syllable{w[0].gen, w[0].exp * m}});
  const Word base = m < 0 ? invert(w) : w;
  std::int64_t reps = m < 0 ? -m : m;
  WordBuilder b;
  for (std::int64_t i = 0; i < reps; ++i) b.push_word(base);
  return b.take();
}

// Shortest conjugate along syllable cancellation at the seam: repeatedly
// strips matching first/last generators. Result has distinct first and last
// generators, or at most one syllable.
inline Word cyclically_reduce(const Word& w) {
  std::vector<Syllable> s(w.syllables().begin(), w.syllables().end());
  while (s.size() >= 2 && s.front().gen == s.back().gen) {
    std::int64_t e = s.front().exp + s.back().exp;
    s.pop_back();
    if (e == 0) {
      s.erase(s.begin());
    } else {
      s.front().exp = e;
    }
  }
  return free_reduce(s);
}

// Splits w at a letter position 0 <= pos <= letter_length; a syllable may be
// split into two same-sign parts.
inline std::pair<Word, Word> split_at_letter(const Word& w, std::uint64_t pos) {
  WordBuilder head, tail;
  std::uint64_t seen = 0;
  for (const auto& s : w.syllables()) {
    std::uint64_t len = static_cast<std::uint64_t>(std::llabs(s.exp));
    if (seen >= pos) {
      tail.push(s);
    } else if (seen + len <= pos) {
      head.push(s);
    } else {
      std::int64_t sign = s.exp > 0 ? 1 : -1;
      std::int64_t take = static_cast<std::int64_t>(pos - seen);
      head.push(s.gen, sign * take);
      tail.push(s.gen, s.exp - sign * take);
    }
    seen += len;
  }
  return {head.take(), tail.take()};
}

// Cyclic rotation by t letters: w = xy with |x| = t letters becomes yx.
inline Word rotate_letters(const Word& w, std::uint64_t t) {
  if (t == 0 || w.empty()) return w;
  auto [head, tail] = split_at_letter(w, t);
  return concat(tail, head);
}

// red(w1 * ins * w2) where w = w1 w2 split at syllable boundary `boundary`.
inline Word insert_at(const Word& w, std::size_t boundary, const Word& ins) {
  WordBuilder b;
  for (std::size_t i = 0; i < boundary; ++i) b.push(w[i]);
  b.push_word(ins);
  for (std::size_t i = boundary; i < w.size(); ++i) b.push(w[i]);
  return b.take();
}

// Total order: letter length first, then lexicographic on syllables.
inline bool lenlex_less(const Word& u, const Word& v) {
  std::uint64_t lu = u.letter_length(), lv = v.letter_length();
  if (lu != lv) return lu < lv;
  return u.syllables() < v.syllables();
}

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t x) {
      h ^= x;
      h *= 1099511628211ull;
    };
    for (const auto& s : w.syllables()) {
      mix(static_cast<std::uint64_t>(s.gen) + 0x9e3779b97f4a7c15ull);
      mix(static_cast<std::uint64_t>(s.exp));
    }
    return static_cast<std::size_t>(h);
  }
};

inline std::string to_string(const Alphabet& alphabet, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += alphabet.name(s.gen);
    if (s.exp != 1) out += '^' + std::to_string(s.exp);
  }
  return out;
}

}  // namespace branchorder
