#include "homlab/fox.hpp"

#include <cctype>
#include <sstream>

namespace homlab {

FreeWord::FreeWord(LatticeParams params, std::vector<int> letters)
    : params_(params), letters_(std::move(letters)) {
  for (int l : letters_) {
    int j = std::abs(l) - 1;
    if (l == 0 || j >= params_.dims()) throw InputError("letter out of range");
  }
  reduce();
}

void FreeWord::reduce() {
  std::vector<int> out;
  out.reserve(letters_.size());
  for (int l : letters_) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  letters_ = std::move(out);
}

FreeWord FreeWord::generator(const LatticeParams& p, int j, int exponent) {
  if (j < 0 || j >= p.dims()) throw InputError("generator index out of range");
  std::vector<int> letters;
  int letter = exponent >= 0 ? j + 1 : -(j + 1);
  for (int i = 0; i < std::abs(exponent); ++i) letters.push_back(letter);
  return FreeWord(p, std::move(letters));
}

FreeWord FreeWord::parse(const LatticeParams& p, const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  std::vector<int> letters;
  while (is >> tok) {
    if (tok.size() < 2) throw InputError("bad word token: " + tok);
    char c = tok[0];
    int idx = 0;
    try {
      idx = std::stoi(tok.substr(1));
    } catch (...) {
      throw InputError("bad word token: " + tok);
    }
    if (idx < 1 || idx > p.g) throw InputError("generator index out of range: " + tok);
    int j;
    if (c == 'a' || c == 'A')
      j = 2 * (idx - 1);
    else if (c == 'b' || c == 'B')
      j = 2 * (idx - 1) + 1;
    else
      throw InputError("bad word token: " + tok);
    letters.push_back(std::isupper(c) ? -(j + 1) : j + 1);
  }
  return FreeWord(p, std::move(letters));
}

FreeWord FreeWord::relator(const LatticeParams& p) {
  FreeWord w(p);
  for (int i = 0; i < p.g; ++i)
    w = w * commutator(generator(p, 2 * i), generator(p, 2 * i + 1));
  return w;
}

std::string FreeWord::str() const {
  std::string out;
  for (int l : letters_) {
    if (!out.empty()) out += ' ';
    int j = std::abs(l) - 1;
    char c = (j % 2 == 0) ? 'a' : 'b';
    if (l < 0) c = char(std::toupper(c));
    out += c;
    out += std::to_string(j / 2 + 1);
  }
  return out;
}

FreeWord FreeWord::operator*(const FreeWord& o) const {
  if (!(params_ == o.params_)) throw ParamError("words over different alphabets");
  std::vector<int> letters = letters_;
  letters.insert(letters.end(), o.letters_.begin(), o.letters_.end());
  return FreeWord(params_, std::move(letters));
}

FreeWord FreeWord::inverse() const {
  std::vector<int> letters(letters_.rbegin(), letters_.rend());
  for (int& l : letters) l = -l;
  return FreeWord(params_, std::move(letters));
}

FreeWord FreeWord::power(int n) const {
  FreeWord base = n >= 0 ? *this : inverse();
  FreeWord out(params_);
  for (int i = 0; i < std::abs(n); ++i) out = out * base;
  return out;
}

FreeWord FreeWord::conjugated(const FreeWord& f) const {
  return f.inverse() * (*this) * f;
}

std::vector<long> FreeWord::abelianize_int() const {
  std::vector<long> ab(params_.dims(), 0);
  for (int l : letters_) ab[std::abs(l) - 1] += l > 0 ? 1 : -1;
  return ab;
}

ZlVector FreeWord::abelianize() const {
  auto ab = abelianize_int();
  std::vector<int> coords(params_.dims());
  for (int i = 0; i < params_.dims(); ++i) {
    long r = ab[i] % params_.L;
    coords[i] = int(r < 0 ? r + params_.L : r);
  }
  return ZlVector(params_, std::move(coords));
}

FreeWord commutator(const FreeWord& x, const FreeWord& y) {
  return x.inverse() * y.inverse() * x * y;
}

GroupRingElement fox_derivative(const FreeWord& w, int j) {
  const auto& p = w.params();
  if (j < 0 || j >= p.dims()) throw InputError("derivative index out of range");
  GroupRingElement out(p);
  std::uint32_t prefix = 0;  // abelianization of the prefix, as a vector index
  for (int l : w.letters()) {
    int k = std::abs(l) - 1;
    std::uint32_t letter_idx = ZlVector::basis(p, k).index();
    if (l > 0) {
      if (k == j) out.add_term(prefix, Rat(1));
      prefix = p.add_index(prefix, letter_idx);
    } else {
      prefix = p.sub_index(prefix, letter_idx);
      if (k == j) out.add_term(prefix, Rat(-1));
    }
  }
  return out;
}

FoxChain fox_chain(const FreeWord& w) {
  FoxChain chain{w.params(), {}};
  chain.components.reserve(w.params().dims());
  for (int j = 0; j < w.params().dims(); ++j)
    chain.components.push_back(fox_derivative(w, j));
  return chain;
}

}  // namespace homlab
