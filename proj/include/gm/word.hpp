#pragma once

// Freely reduced words over {a, A, b, B}, where A = a⁻¹ and B = b⁻¹.

#include <string>
#include <string_view>

#include "gm/moebius.hpp"

namespace gm {

class Word {
 public:
  Word() = default;

  /// Parses a string of letters a, A, b, B (the empty string or "1" is the
  /// identity) and reduces it.
  static Word parse(std::string_view s);

  static Word a() { return Word("a"); }
  static Word b() { return Word("b"); }

  const std::string& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word pow(long n) const;

  /// Reduced under conjugation: first letter is not the inverse of the last.
  bool is_cyclically_reduced() const;
  Word cyclic_reduction() const;

  /// Replaces a by `x` and b by `y` (and their inverses accordingly).
  Word substitute(const Word& x, const Word& y) const;

  friend Word operator*(const Word& x, const Word& y);
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

  /// "1" for the identity.
  std::string str() const { return letters_.empty() ? std::string("1") : letters_; }

  /// Product of the generator lifts along the word, left to right.
  template <typename Scalar>
  Moebius<Scalar> evaluate(const Moebius<Scalar>& a, const Moebius<Scalar>& b) const {
    const Moebius<Scalar> ai = a.inverse(), bi = b.inverse();
    Moebius<Scalar> r;
    std::size_t i = 0;
    while (i < letters_.size()) {
      // runs of one letter go through pow to keep the multiplication count low
      std::size_t j = i;
      while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
      const long run = static_cast<long>(j - i);
      switch (letters_[i]) {
        case 'a': r = r * a.pow(run); break;
        case 'A': r = r * ai.pow(run); break;
        case 'b': r = r * b.pow(run); break;
        default: r = r * bi.pow(run); break;
      }
      i = j;
    }
    return r;
  }

 private:
  explicit Word(std::string s) : letters_(std::move(s)) {}

  static char invert(char c);
  void reduce();

  std::string letters_;
};

/// Lift-sign-insensitive comparison scaled by the entry size, which is what
/// a word evaluation can promise once the entries are large.
template <typename Scalar>
Scalar relative_projective_distance(const Moebius<Scalar>& x, const Moebius<Scalar>& y) {
  const Scalar scale = std::max({Scalar(1), x.matrix().cwiseAbs().maxCoeff(), y.matrix().cwiseAbs().maxCoeff()});
  return projective_distance(x, y) / scale;
}

}  // namespace gm
