#ifndef STALLINGS_WORDS_HPP
#define STALLINGS_WORDS_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stallings {

/// Signed letter: +k is the k-th positive letter (1-based), -k its formal
/// inverse. 0 is never a valid letter.
using Letter = int;

inline Letter inverse(Letter x) { return -x; }
inline int letter_index(Letter x) { return x < 0 ? -x : x; }
inline bool is_positive(Letter x) { return x > 0; }

/// Total order on signed letters: a < a^-1 < b < b^-1 < ...
/// Used wherever a deterministic traversal order is required.
inline int letter_ord(Letter x) { return 2 * (letter_index(x) - 1) + (x < 0 ? 1 : 0); }

class Alphabet {
 public:
  Alphabet() : Alphabet(1) {}

  explicit Alphabet(int n) {
    if (n < 1) throw std::invalid_argument("alphabet size must be >= 1");
    names_.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      if (n <= 26) {
        names_.push_back(std::string(1, static_cast<char>('a' + i)));
      } else {
        names_.push_back("a" + std::to_string(i + 1));
      }
    }
  }

  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw std::invalid_argument("alphabet must have at least one letter");
    for (const auto& name : names_) {
      if (name.empty()) throw std::invalid_argument("empty letter name");
    }
    auto sorted = names_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("letter names must be pairwise distinct");
    }
  }

  int size() const { return static_cast<int>(names_.size()); }

  const std::string& name(int index) const { return names_.at(static_cast<size_t>(index - 1)); }

  /// Index (1-based) of the named letter, or 0 if unknown.
  int index_of(std::string_view name) const {
    for (int i = 0; i < size(); ++i) {
      if (names_[static_cast<size_t>(i)] == name) return i + 1;
    }
    return 0;
  }

  /// True when every name is a single lowercase ASCII letter, which enables
  /// the compact one-character-per-letter serialization.
  bool compact() const {
    for (const auto& name : names_) {
      if (name.size() != 1 || !std::islower(static_cast<unsigned char>(name[0]))) return false;
    }
    return true;
  }

  bool valid(Letter x) const { return x != 0 && letter_index(x) <= size(); }

  auto operator<=>(const Alphabet&) const = default;

 private:
  std::vector<std::string> names_;
};

/// A word over A^+- : a finite sequence of signed letters, not necessarily
/// reduced.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
    for (Letter x : letters_) {
      if (x == 0) throw std::invalid_argument("0 is not a letter");
    }
  }

  size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }

  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  void push_back(Letter x) {
    if (x == 0) throw std::invalid_argument("0 is not a letter");
    letters_.push_back(x);
  }

  Word inverse() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(-*it);
    return Word(std::move(out));
  }

  friend Word operator*(const Word& lhs, const Word& rhs) {
    std::vector<Letter> out;
    out.reserve(lhs.size() + rhs.size());
    out.insert(out.end(), lhs.letters_.begin(), lhs.letters_.end());
    out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
    return Word(std::move(out));
  }

  Word pow(int k) const {
    Word base = k < 0 ? inverse() : *this;
    int reps = k < 0 ? -k : k;
    std::vector<Letter> out;
    out.reserve(base.size() * static_cast<size_t>(reps));
    for (int i = 0; i < reps; ++i) out.insert(out.end(), base.letters_.begin(), base.letters_.end());
    return Word(std::move(out));
  }

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

inline bool is_reduced(const Word& w) {
  for (size_t i = 1; i < w.size(); ++i) {
    if (w[i] == -w[i - 1]) return false;
  }
  return true;
}

inline bool is_cyclically_reduced(const Word& w) {
  if (!is_reduced(w)) return false;
  return w.empty() || w[0] != -w[w.size() - 1];
}

/// A freely reduced word: no factor x x^-1. The empty word is reduced.
class ReducedWord {
 public:
  ReducedWord() = default;
  explicit ReducedWord(Word w) : word_(std::move(w)) {
    if (!is_reduced(word_)) throw std::invalid_argument("word is not freely reduced");
  }

  const Word& word() const { return word_; }
  operator const Word&() const { return word_; }

  size_t size() const { return word_.size(); }
  bool empty() const { return word_.empty(); }
  Letter operator[](size_t i) const { return word_[i]; }

  ReducedWord inverse() const { return ReducedWord(word_.inverse()); }

  auto operator<=>(const ReducedWord&) const = default;

 private:
  Word word_;
};

/// Unique free reduction, by successive cancellation of adjacent inverse
/// pairs. Idempotent on reduced input.
inline ReducedWord free_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (Letter x : w) {
    if (!stack.empty() && stack.back() == -x) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  }
  return ReducedWord(Word(std::move(stack)));
}

/// w = conjugator . core . conjugator^-1 with the core cyclically reduced and
/// the right-hand side reduced as written.
struct CyclicDecomposition {
  ReducedWord conjugator;
  ReducedWord core;

  bool operator==(const CyclicDecomposition&) const = default;
};

inline CyclicDecomposition cyclic_reduce(const Word& w) {
  ReducedWord r = free_reduce(w);
  const auto& letters = r.word().letters();
  size_t lo = 0;
  size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == -letters[hi - 1]) {
    ++lo;
    --hi;
  }
  CyclicDecomposition out;
  out.conjugator = ReducedWord(Word(std::vector<Letter>(letters.begin(), letters.begin() + static_cast<long>(lo))));
  out.core = ReducedWord(Word(std::vector<Letter>(letters.begin() + static_cast<long>(lo), letters.begin() + static_cast<long>(hi))));
  return out;
}

/// Reduced product of arbitrarily many words.
inline ReducedWord reduced_product(const Word& lhs, const Word& rhs) { return free_reduce(lhs * rhs); }

inline ReducedWord conjugate_word(const Word& w, const Word& g) {
  return free_reduce(g.inverse() * w * g);
}

// --- serialization -------------------------------------------------------
//
// Compact alphabets (single lowercase names): lowercase char = positive
// letter, uppercase = its inverse, "1" = empty word.  Other alphabets use
// dot- or whitespace-separated tokens "name" / "name^-1".

inline std::string format_word(const Alphabet& alphabet, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  if (alphabet.compact()) {
    for (Letter x : w) {
      if (!alphabet.valid(x)) throw std::invalid_argument("letter out of range for alphabet");
      char c = alphabet.name(letter_index(x))[0];
      out.push_back(is_positive(x) ? c : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  } else {
    for (size_t i = 0; i < w.size(); ++i) {
      Letter x = w[i];
      if (!alphabet.valid(x)) throw std::invalid_argument("letter out of range for alphabet");
      if (i > 0) out.push_back('.');
      out += alphabet.name(letter_index(x));
      if (!is_positive(x)) out += "^-1";
    }
  }
  return out;
}

inline std::string format_word(const Alphabet& alphabet, const ReducedWord& w) {
  return format_word(alphabet, w.word());
}

inline Word parse_word(const Alphabet& alphabet, std::string_view text) {
  // trim surrounding whitespace
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text == "1" || text.empty()) return Word();

  std::vector<Letter> letters;
  if (alphabet.compact()) {
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      int idx = alphabet.index_of(std::string_view(&lower, 1));
      if (idx == 0) throw std::invalid_argument(std::string("unknown letter '") + c + "'");
      letters.push_back(std::islower(static_cast<unsigned char>(c)) ? idx : -idx);
    }
  } else {
    size_t pos = 0;
    while (pos < text.size()) {
      while (pos < text.size() && (text[pos] == '.' || std::isspace(static_cast<unsigned char>(text[pos])))) ++pos;
      if (pos >= text.size()) break;
      size_t end = pos;
      while (end < text.size() && text[end] != '.' && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
      std::string_view token = text.substr(pos, end - pos);
      bool inv = false;
      if (token.size() > 3 && token.substr(token.size() - 3) == "^-1") {
        inv = true;
        token.remove_suffix(3);
      }
      int idx = alphabet.index_of(token);
      if (idx == 0) throw std::invalid_argument("malformed token '" + std::string(token) + "'");
      letters.push_back(inv ? -idx : idx);
      pos = end;
    }
    if (letters.empty()) throw std::invalid_argument("malformed word");
  }
  return Word(std::move(letters));
}

}  // namespace stallings

#endif  // STALLINGS_WORDS_HPP
