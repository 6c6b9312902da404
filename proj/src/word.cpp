#include "gm/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace gm {

char Word::invert(char c) {
  switch (c) {
    case 'a': return 'A';
    case 'A': return 'a';
    case 'b': return 'B';
    case 'B': return 'b';
  }
  throw std::invalid_argument(std::string("not a generator letter: ") + c);
}

void Word::reduce() {
  std::string out;
  out.reserve(letters_.size());
  for (char c : letters_) {
    if (!out.empty() && out.back() == invert(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  letters_ = std::move(out);
}

Word Word::parse(std::string_view s) {
  if (s == "1") return Word();
  Word w{std::string(s)};
  for (char c : w.letters_) invert(c);  // validates
  w.reduce();
  return w;
}

Word Word::inverse() const {
  std::string s(letters_.rbegin(), letters_.rend());
  for (char& c : s) c = invert(c);
  return Word(std::move(s));
}

Word Word::pow(long n) const {
  const Word base = n < 0 ? inverse() : *this;
  Word r;
  for (long k = 0; k < (n < 0 ? -n : n); ++k) r = r * base;
  return r;
}

Word Word::substitute(const Word& x, const Word& y) const {
  const Word xi = x.inverse(), yi = y.inverse();
  Word out;
  for (char c : letters_) {
    const Word& image = c == 'a' ? x : c == 'A' ? xi : c == 'b' ? y : yi;
    out.letters_ += image.letters_;
  }
  out.reduce();
  return out;
}

bool Word::is_cyclically_reduced() const {
  return letters_.size() < 2 || letters_.front() != invert(letters_.back());
}

Word Word::cyclic_reduction() const {
  std::size_t i = 0, j = letters_.size();
  while (j - i >= 2 && letters_[i] == invert(letters_[j - 1])) {
    ++i;
    --j;
  }
  return Word(letters_.substr(i, j - i));
}

Word operator*(const Word& x, const Word& y) {
  // only the seam can cancel, both sides being reduced
  std::size_t k = 0;
  const std::size_t nx = x.letters_.size(), ny = y.letters_.size();
  while (k < nx && k < ny && x.letters_[nx - 1 - k] == Word::invert(y.letters_[k])) ++k;
  std::string s = x.letters_.substr(0, nx - k);
  s.append(y.letters_, k, std::string::npos);
  return Word(std::move(s));
}

}  // namespace gm
