#pragma once

// Free-group words over the generators x1, y1, ..., xg, yg and endomorphisms
// of the free group given by generator images.
//
// Letters are signed integers: +k is generator k, -k its inverse. Generator
// 2i-1 is x_i and generator 2i is y_i.

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mcg/error.hpp"

namespace mcg {

using Letter = int;

struct Generator {
  int index = 1;  // 1-based, in [1, rank]
  int sign = 1;   // +1 or -1

  constexpr Letter letter() const { return sign * index; }
  static constexpr Generator from_letter(Letter l) { return {l < 0 ? -l : l, l < 0 ? -1 : 1}; }
  static constexpr Generator x(int i, int sign = 1) { return {2 * i - 1, sign}; }
  static constexpr Generator y(int i, int sign = 1) { return {2 * i, sign}; }
  friend constexpr bool operator==(Generator, Generator) = default;
};

/// Sort key of the fixed total order x1 < x1^-1 < y1 < y1^-1 < x2 < ...
constexpr int letter_order(Letter l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }

/// A freely reduced word. The empty word is the identity.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) { reduce_in_place(); }

  static Word generator(Generator g) { return Word{g.letter()}; }
  static Word x(int i) { return Word{2 * i - 1}; }
  static Word y(int i) { return Word{2 * i}; }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  /// Largest generator index used, 0 for the identity.
  int max_generator() const {
    int m = 0;
    for (Letter l : letters_) m = std::max(m, std::abs(l));
    return m;
  }

  Word inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (Letter& l : out) l = -l;
    Word w;
    w.letters_ = std::move(out);
    return w;
  }

  Word& operator*=(const Word& rhs) {
    for (Letter l : rhs.letters_) push(l);
    return *this;
  }
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  Word pow(int n) const {
    const Word base = n < 0 ? inverse() : *this;
    Word out;
    for (int i = 0; i < std::abs(n); ++i) out *= base;
    return out;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    return std::lexicographical_compare_three_way(
        a.letters_.begin(), a.letters_.end(), b.letters_.begin(), b.letters_.end(),
        [](Letter p, Letter q) { return letter_order(p) <=> letter_order(q); });
  }

  /// Appends one letter, cancelling against the last letter if possible.
  void push(Letter l) {
    if (!letters_.empty() && letters_.back() == -l)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

 private:
  void reduce_in_place() {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (Letter l : letters_) {
      if (l == 0) throw InvalidArgument("letter 0 is not a generator");
      if (!out.empty() && out.back() == -l)
        out.pop_back();
      else
        out.push_back(l);
    }
    letters_ = std::move(out);
  }

  std::vector<Letter> letters_;
};

inline Word reduce(std::span<const Letter> letters) {
  return Word(std::vector<Letter>(letters.begin(), letters.end()));
}

inline Word reduce(std::span<const Generator> gens) {
  std::vector<Letter> letters;
  letters.reserve(gens.size());
  for (const Generator& g : gens) {
    if (g.index < 1 || (g.sign != 1 && g.sign != -1)) throw InvalidArgument("malformed generator");
    letters.push_back(g.letter());
  }
  return Word(std::move(letters));
}

enum class WordOp { concat, invert, conjugate, commutator };

/// Conjugation of v by u is u v u^-1; the commutator is [u,v] = u v u^-1 v^-1.
inline Word combine(const Word& u, const Word& v, WordOp op) {
  switch (op) {
    case WordOp::concat:
      return u * v;
    case WordOp::invert:
      return u.inverse();
    case WordOp::conjugate:
      return u * v * u.inverse();
    case WordOp::commutator:
      return u * v * u.inverse() * v.inverse();
  }
  return {};
}

inline Word conjugate(const Word& u, const Word& v) { return combine(u, v, WordOp::conjugate); }
inline Word commutator(const Word& u, const Word& v) { return combine(u, v, WordOp::commutator); }

inline Word cyclic_reduce(const Word& w) {
  const auto& l = w.letters();
  std::size_t lo = 0, hi = l.size();
  while (hi - lo >= 2 && l[lo] == -l[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(std::vector<Letter>(l.begin() + static_cast<std::ptrdiff_t>(lo),
                                  l.begin() + static_cast<std::ptrdiff_t>(hi)));
}

/// Unoriented free-homotopy class of a closed curve: the conjugacy class of a
/// word together with that of its inverse.
///
/// The representative is the lexicographically least rotation of the cyclic
/// reduction of the word or of its inverse, under letter_order().
class CurveClass {
 public:
  CurveClass() = default;

  const Word& canonical() const { return canonical_; }
  bool trivial() const { return canonical_.empty(); }

  friend bool operator==(const CurveClass&, const CurveClass&) = default;
  friend auto operator<=>(const CurveClass&, const CurveClass&) = default;

 private:
  friend CurveClass curve_class(const Word& w);
  Word canonical_;
};

inline CurveClass curve_class(const Word& w) {
  CurveClass c;
  const Word core = cyclic_reduce(w);
  if (core.empty()) return c;
  const std::size_t n = core.size();
  std::vector<Letter> best;
  for (const Word& base : {core, core.inverse()}) {
    const auto& l = base.letters();
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<Letter> rot;
      rot.reserve(n);
      for (std::size_t i = 0; i < n; ++i) rot.push_back(l[(r + i) % n]);
      if (best.empty() || std::lexicographical_compare(
                              rot.begin(), rot.end(), best.begin(), best.end(),
                              [](Letter p, Letter q) { return letter_order(p) < letter_order(q); }))
        best = std::move(rot);
    }
  }
  c.canonical_ = Word(std::move(best));
  return c;
}

/// Endomorphism of the free group of rank images().size().
class Endomorphism {
 public:
  Endomorphism() = default;
  explicit Endomorphism(std::vector<Word> images) : images_(std::move(images)) {}

  static Endomorphism identity(int rank) {
    std::vector<Word> images;
    images.reserve(static_cast<std::size_t>(rank));
    for (int k = 1; k <= rank; ++k) images.push_back(Word{k});
    return Endomorphism(std::move(images));
  }

  int rank() const { return static_cast<int>(images_.size()); }
  const std::vector<Word>& images() const { return images_; }
  const Word& image(int generator) const { return images_.at(static_cast<std::size_t>(generator - 1)); }

  friend bool operator==(const Endomorphism&, const Endomorphism&) = default;

 private:
  std::vector<Word> images_;
};

inline Word apply(const Endomorphism& e, const Word& w) {
  if (w.max_generator() > e.rank())
    throw RankMismatch("word uses generator " + std::to_string(w.max_generator()) +
                       " but endomorphism has rank " + std::to_string(e.rank()));
  Word out;
  for (Letter l : w.letters()) {
    const Word& img = e.image(std::abs(l));
    if (l > 0) {
      for (Letter m : img.letters()) out.push(m);
    } else {
      const auto& ml = img.letters();
      for (auto it = ml.rbegin(); it != ml.rend(); ++it) out.push(-*it);
    }
  }
  return out;
}

/// e1 applied first, then e2: apply(compose(e1, e2), w) == apply(e2, apply(e1, w)).
inline Endomorphism compose(const Endomorphism& e1, const Endomorphism& e2) {
  if (e1.rank() != e2.rank()) throw RankMismatch("compose: ranks differ");
  std::vector<Word> images;
  images.reserve(e1.images().size());
  for (const Word& w : e1.images()) images.push_back(apply(e2, w));
  return Endomorphism(std::move(images));
}

inline bool endo_equal(const Endomorphism& e1, const Endomorphism& e2) {
  if (e1.rank() != e2.rank()) throw RankMismatch("endo_equal: ranks differ");
  return e1.images() == e2.images();
}

/// Includes an endomorphism of rank r into rank r' >= r, fixing the new generators.
inline Endomorphism pad(const Endomorphism& e, int rank) {
  if (rank < e.rank()) throw RankMismatch("pad: target rank is smaller");
  std::vector<Word> images = e.images();
  for (int k = e.rank() + 1; k <= rank; ++k) images.push_back(Word{k});
  return Endomorphism(std::move(images));
}

// Text form used in reports and the DSL: "x1*y1^-1*x2", identity prints as "1".
inline std::string letter_name(Letter l) {
  const int k = std::abs(l);
  std::string s = (k % 2 == 1 ? "x" : "y") + std::to_string((k + 1) / 2);
  if (l < 0) s += "^-1";
  return s;
}

inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '*';
    out += letter_name(w[i]);
  }
  return out;
}

inline std::string to_string(const CurveClass& c) { return to_string(c.canonical()); }

}  // namespace mcg
