#include "homlab/group_ring.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace homlab {

GroupRingElement GroupRingElement::basis(const LatticeParams& p, const ZlVector& v) {
  return basis(p, v.index());
}

GroupRingElement GroupRingElement::basis(const LatticeParams& p, std::uint32_t index) {
  GroupRingElement e(p);
  e.coeffs_.emplace_back(index, Rat(1));
  return e;
}

GroupRingElement GroupRingElement::theta(const LatticeParams& p) {
  GroupRingElement e(p);
  e.coeffs_.reserve(p.count);
  for (std::uint32_t i = 0; i < p.count; ++i) e.coeffs_.emplace_back(i, Rat(1));
  return e;
}

Rat GroupRingElement::coeff(std::uint32_t index) const {
  auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), index,
                             [](const auto& a, std::uint32_t i) { return a.first < i; });
  if (it != coeffs_.end() && it->first == index) return it->second;
  return Rat(0);
}

void GroupRingElement::add_term(std::uint32_t index, const Rat& c) {
  coeffs_.emplace_back(index, c);
  dirty_ = true;
  normalize();
}

void GroupRingElement::normalize() {
  if (!dirty_) return;
  std::sort(coeffs_.begin(), coeffs_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec<Rat> out;
  for (auto& [i, v] : coeffs_) {
    if (!out.empty() && out.back().first == i)
      out.back().second += v;
    else
      out.emplace_back(i, std::move(v));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& t) { return sgn(t.second) == 0; }),
            out.end());
  coeffs_ = std::move(out);
  dirty_ = false;
}

static void require_same(const GroupRingElement& a, const GroupRingElement& b) {
  if (!(a.params() == b.params()))
    throw ParamError("group ring elements over different lattices");
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  require_same(*this, o);
  GroupRingElement out(params_);
  out.coeffs_ = coeffs_;
  out.coeffs_.insert(out.coeffs_.end(), o.coeffs_.begin(), o.coeffs_.end());
  out.dirty_ = true;
  out.normalize();
  return out;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  return *this + (-o);
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement out(params_);
  out.coeffs_ = coeffs_;
  for (auto& [i, v] : out.coeffs_) v = -v;
  return out;
}

GroupRingElement GroupRingElement::scaled(const Rat& c) const {
  GroupRingElement out(params_);
  if (sgn(c) == 0) return out;
  out.coeffs_ = coeffs_;
  for (auto& [i, v] : out.coeffs_) v *= c;
  return out;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  require_same(*this, o);
  std::map<std::uint32_t, Rat> acc;
  for (const auto& [i, a] : coeffs_)
    for (const auto& [j, b] : o.coeffs_) acc[params_.add_index(i, j)] += a * b;
  GroupRingElement out(params_);
  for (auto& [i, v] : acc)
    if (sgn(v) != 0) out.coeffs_.emplace_back(i, std::move(v));
  return out;
}

GroupRingElement GroupRingElement::translated(const ZlVector& v) const {
  return translated(v.index());
}

GroupRingElement GroupRingElement::translated(std::uint32_t index) const {
  GroupRingElement out(params_);
  out.coeffs_.reserve(coeffs_.size());
  for (const auto& [i, v] : coeffs_)
    out.coeffs_.emplace_back(params_.add_index(i, index), v);
  out.dirty_ = true;
  out.normalize();
  return out;
}

bool GroupRingElement::operator==(const GroupRingElement& o) const {
  return params_ == o.params_ && coeffs_ == o.coeffs_;
}

Rat augmentation(const GroupRingElement& e) {
  Rat s(0);
  for (const auto& [i, v] : e.coeffs()) s += v;
  return s;
}

Decomposition decompose(const GroupRingElement& e) {
  const auto& p = e.params();
  Decomposition d{augmentation(e) / Rat(long(p.count)), GroupRingElement(p),
                  GroupRingElement(p)};
  d.trivial = GroupRingElement::theta(p).scaled(d.theta_multiple);
  d.ideal = e - d.trivial;
  return d;
}

GroupRingElement psi_image(const ZlVector& v, const ZlVector& w1, const ZlVector& w2,
                           bool check_pair) {
  if (check_pair) {
    if (w1 == w2) throw InputError("psi_image: w1 == w2");
    if (!is_isotropic({w1, w2}) || !is_unimodular({w1, w2}))
      throw InputError("psi_image: {w1, w2} must be isotropic and unimodular");
  }
  return boundary_T2(v, w1, w2);
}

GroupRingElement boundary_T2(const ZlVector& f, const ZlVector& y, const ZlVector& z) {
  const auto& p = f.params();
  GroupRingElement e(p);
  e.add_term(f.index(), Rat(1));
  e.add_term((f + y).index(), Rat(-1));
  e.add_term((f + z).index(), Rat(-1));
  e.add_term((f + y + z).index(), Rat(1));
  return e;
}

GroupRingElement boundary_T3(const ZlVector& f, const ZlVector& x, const ZlVector& y,
                             const ZlVector& z) {
  const auto& p = f.params();
  GroupRingElement e(p);
  ZlVector base = f + y;
  for (int k = 0; k < p.L; ++k) {
    e.add_term(base.index(), Rat(1));
    e.add_term((base + z).index(), Rat(-1));
    base = base + x;
  }
  return e;
}

bool verify_case3_cancellation(const ZlVector& f, const ZlVector& y, const ZlVector& z) {
  const auto& p = f.params();
  GroupRingElement acc(p);
  ZlVector base = f;
  for (int k = 0; k < p.L; ++k) {
    acc = acc + boundary_T2(base, y, z);
    base = base + y;
  }
  return acc.is_zero();
}

bool verify_case4_telescoping(const ZlVector& f, const ZlVector& x, const ZlVector& y,
                              const ZlVector& z) {
  const auto& p = f.params();
  GroupRingElement acc(p);
  ZlVector base = f;
  for (int k = 0; k < p.L; ++k) {
    acc = acc + boundary_T3(base, x, y, z);
    base = base + z;
  }
  return acc.is_zero();
}

std::string to_cache_text(const GroupRingElement& e) {
  std::ostringstream os;
  os << e.params().g << ' ' << e.params().L << ' ' << e.coeffs().size() << '\n';
  for (const auto& [i, v] : e.coeffs())
    os << i << ' ' << v.get_num().get_str() << ' ' << v.get_den().get_str() << '\n';
  return os.str();
}

GroupRingElement group_ring_from_cache_text(const std::string& text) {
  std::istringstream is(text);
  int g = 0, L = 0;
  std::size_t nnz = 0;
  if (!(is >> g >> L >> nnz)) throw InputError("group ring cache header malformed");
  GroupRingElement e(LatticeParams::make(g, L));
  for (std::size_t k = 0; k < nnz; ++k) {
    std::uint32_t idx;
    std::string num, den;
    if (!(is >> idx >> num >> den)) throw InputError("group ring cache entry malformed");
    Rat q;
    try {
      q = Rat(mpz_class(num), mpz_class(den));
    } catch (...) {
      throw InputError("group ring cache value malformed");
    }
    q.canonicalize();
    e.add_term(idx, q);
  }
  return e;
}

}  // namespace homlab
