// word.hpp -- reduced words over the alphabet of a finitely generated free
// group: free reduction, ShortLex order, enumeration, cyclic decomposition.

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cogrow {

// A letter is a nonzero integer in [-rank, rank]; -i denotes the inverse of
// generator i.
using Letter = std::int32_t;

constexpr Letter inverse(Letter x) { return -x; }

struct Alphabet {
  int rank;

  explicit Alphabet(int r = 2) : rank(r) {
    if (r < 1 || r > 26)
      throw std::invalid_argument("alphabet rank must be between 1 and 26");
  }

  int degree() const { return 2 * rank; }

  bool valid(Letter x) const { return x != 0 && -rank <= x && x <= rank; }

  // Position in the fixed letter order a < a^-1 < b < b^-1 < ...
  int index(Letter x) const {
    return x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1;
  }

  Letter letter_at(int idx) const {
    return idx % 2 == 0 ? Letter(idx / 2 + 1) : Letter(-(idx / 2 + 1));
  }

  static int index_of_inverse(int idx) { return idx ^ 1; }
};

// A freely reduced word. The class invariant is that no adjacent pair of
// letters cancels; the empty word is the group identity.
class Word {
 public:
  Word() = default;

  static Word from_reduced(std::vector<Letter> letters) {
    for (std::size_t i = 0; i + 1 < letters.size(); ++i)
      if (letters[i] == -letters[i + 1])
        throw std::invalid_argument("word is not freely reduced");
    Word w;
    w.letters_ = std::move(letters);
    return w;
  }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }

  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  bool operator==(const Word& o) const { return letters_ == o.letters_; }
  bool operator!=(const Word& o) const { return letters_ != o.letters_; }

 private:
  std::vector<Letter> letters_;

  friend Word reduce(std::span<const Letter>);
  friend Word reduce(const Alphabet&, std::span<const Letter>);
};

// Free reduction of an arbitrary letter sequence; the result is the unique
// reduced form. Idempotent.
inline Word reduce(std::span<const Letter> raw) {
  std::vector<Letter> stack;
  stack.reserve(raw.size());
  for (Letter x : raw) {
    if (!stack.empty() && stack.back() == -x)
      stack.pop_back();
    else
      stack.push_back(x);
  }
  Word w;
  w.letters_ = std::move(stack);
  return w;
}

inline Word reduce(const Alphabet& ab, std::span<const Letter> raw) {
  for (Letter x : raw)
    if (!ab.valid(x))
      throw std::invalid_argument("letter out of alphabet range");
  return reduce(raw);
}

inline Word reduce(std::initializer_list<Letter> raw) {
  return reduce(std::span<const Letter>(raw.begin(), raw.size()));
}

inline Word invert(const Word& w) {
  std::vector<Letter> v(w.letters().rbegin(), w.letters().rend());
  for (Letter& x : v) x = -x;
  return Word::from_reduced(std::move(v));
}

// Reduced product. Only the seam can cancel when both factors are reduced.
inline Word multiply(const Word& u, const Word& v) {
  std::size_t i = u.size(), j = 0;
  while (i > 0 && j < v.size() && u[i - 1] == -v[j]) {
    --i;
    ++j;
  }
  std::vector<Letter> out;
  out.reserve(i + v.size() - j);
  out.insert(out.end(), u.letters().begin(), u.letters().begin() + i);
  out.insert(out.end(), v.letters().begin() + j, v.letters().end());
  return Word::from_reduced(std::move(out));
}

inline Word conjugate(const Word& w, const Word& g) {
  return multiply(multiply(g, w), invert(g));
}

inline Word power(const Word& w, std::size_t k) {
  Word r;
  for (std::size_t i = 0; i < k; ++i) r = multiply(r, w);
  return r;
}

// g = conjugator * core * conjugator^-1 with the core cyclically reduced and
// of minimal length.
struct CyclicDecomposition {
  Word conjugator;  // h1
  Word core;        // h2
};

inline CyclicDecomposition cyclic_reduce(const Word& g) {
  if (g.empty()) throw std::invalid_argument("cyclic_reduce: empty word");
  std::size_t lo = 0, hi = g.size();
  std::vector<Letter> prefix;
  while (hi - lo >= 2 && g[lo] == -g[hi - 1]) {
    prefix.push_back(g[lo]);
    ++lo;
    --hi;
  }
  std::vector<Letter> core(g.letters().begin() + lo, g.letters().begin() + hi);
  return {Word::from_reduced(std::move(prefix)),
          Word::from_reduced(std::move(core))};
}

// ShortLex: shorter first, ties broken by the letter order a < a^-1 < b < ...
// (the letter order does not depend on the rank).
inline int shortlex_compare(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size() ? -1 : 1;
  auto key = [](Letter x) { return x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1; };
  for (std::size_t i = 0; i < u.size(); ++i) {
    int a = key(u[i]), b = key(v[i]);
    if (a != b) return a < b ? -1 : 1;
  }
  return 0;
}

inline bool shortlex_less(const Word& u, const Word& v) {
  return shortlex_compare(u, v) < 0;
}

struct ShortLexLess {
  bool operator()(const Word& u, const Word& v) const {
    return shortlex_less(u, v);
  }
};

struct ShortLexGreater {
  bool operator()(const Word& u, const Word& v) const {
    return shortlex_less(v, u);
  }
};

// All reduced words of the given exact length, in ShortLex order.
inline std::vector<Word> words_of_length(const Alphabet& ab, unsigned len) {
  std::vector<Word> level{Word{}};
  for (unsigned l = 0; l < len; ++l) {
    std::vector<Word> next;
    next.reserve(level.size() * (ab.degree() - 1) + ab.degree());
    for (const Word& w : level)
      for (int idx = 0; idx < ab.degree(); ++idx) {
        Letter x = ab.letter_at(idx);
        if (!w.empty() && w.back() == -x) continue;
        std::vector<Letter> v(w.letters());
        v.push_back(x);
        next.push_back(Word::from_reduced(std::move(v)));
      }
    level = std::move(next);
  }
  return level;
}

inline std::vector<Word> words_up_to_length(const Alphabet& ab, unsigned len) {
  std::vector<Word> all;
  for (unsigned l = 0; l <= len; ++l) {
    auto lvl = words_of_length(ab, l);
    all.insert(all.end(), lvl.begin(), lvl.end());
  }
  return all;
}

// First n reduced words in ShortLex order, starting with the empty word.
inline std::vector<Word> enumerate(const Alphabet& ab, std::size_t n) {
  std::vector<Word> out;
  for (unsigned len = 0; out.size() < n; ++len) {
    auto lvl = words_of_length(ab, len);
    for (auto& w : lvl) {
      if (out.size() == n) break;
      out.push_back(std::move(w));
    }
  }
  return out;
}

// xyx^-1y^-1; the empty word signals that x and y commute (in a free group,
// that they are powers of a common root).
inline Word commutator_witness(const Word& x, const Word& y) {
  return multiply(multiply(x, y), multiply(invert(x), invert(y)));
}

// Text encoding: lowercase letters are generators, uppercase their inverses,
// "1" (or the empty string) is the identity.
inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  s.reserve(w.size());
  for (Letter x : w.letters())
    s.push_back(x > 0 ? char('a' + x - 1) : char('A' - x - 1));
  return s;
}

inline Word parse_word(const Alphabet& ab, const std::string& text,
                       bool allow_unreduced = false) {
  if (text.empty() || text == "1") return Word{};
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    Letter x;
    if (c >= 'a' && c <= 'z')
      x = Letter(c - 'a' + 1);
    else if (c >= 'A' && c <= 'Z')
      x = Letter(-(c - 'A' + 1));
    else
      throw std::invalid_argument(std::string("invalid character '") + c +
                                  "' in word");
    if (!ab.valid(x))
      throw std::invalid_argument(std::string("letter '") + c +
                                  "' outside alphabet of rank " +
                                  std::to_string(ab.rank));
    letters.push_back(x);
  }
  if (allow_unreduced) return reduce(std::span<const Letter>(letters));
  return Word::from_reduced(std::move(letters));
}

}  // namespace cogrow
