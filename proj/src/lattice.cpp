#include "homlab/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace homlab {

LatticeParams LatticeParams::make(int g, int L) {
  if (g < 1) throw ParamError("genus must be >= 1");
  if (L < 2) throw ParamError("level must be >= 2");
  std::uint64_t count = 1;
  for (int i = 0; i < 2 * g; ++i) {
    if (count > (std::uint64_t(1) << 32) / std::uint64_t(L))
      throw ParamError("L^{2g} does not fit the 32-bit vector index");
    count *= std::uint64_t(L);
  }
  return LatticeParams{g, L, count};
}

std::uint32_t LatticeParams::add_index(std::uint32_t i, std::uint32_t j) const {
  std::uint32_t out = 0, base = 1;
  for (int d = 0; d < dims(); ++d) {
    int s = int(i % L) + int(j % L);
    if (s >= L) s -= L;
    out += std::uint32_t(s) * base;
    i /= std::uint32_t(L);
    j /= std::uint32_t(L);
    base *= std::uint32_t(L);
  }
  return out;
}

std::uint32_t LatticeParams::sub_index(std::uint32_t i, std::uint32_t j) const {
  return add_index(i, neg_index(j));
}

std::uint32_t LatticeParams::neg_index(std::uint32_t i) const {
  std::uint32_t out = 0, base = 1;
  for (int d = 0; d < dims(); ++d) {
    int c = int(i % L);
    out += std::uint32_t(c == 0 ? 0 : L - c) * base;
    i /= std::uint32_t(L);
    base *= std::uint32_t(L);
  }
  return out;
}

ZlVector::ZlVector(LatticeParams params, std::vector<int> coords)
    : params_(params), coords_(std::move(coords)) {
  if (int(coords_.size()) != params_.dims())
    throw ParamError("coordinate count does not match 2g");
  for (int& c : coords_) {
    c %= params_.L;
    if (c < 0) c += params_.L;
  }
}

ZlVector ZlVector::zero(const LatticeParams& p) {
  return ZlVector(p, std::vector<int>(p.dims(), 0));
}

ZlVector ZlVector::basis(const LatticeParams& p, int c) {
  std::vector<int> v(p.dims(), 0);
  v.at(c) = 1;
  return ZlVector(p, std::move(v));
}

ZlVector ZlVector::basis_a(const LatticeParams& p, int i) { return basis(p, 2 * i); }
ZlVector ZlVector::basis_b(const LatticeParams& p, int i) { return basis(p, 2 * i + 1); }

ZlVector ZlVector::from_index(const LatticeParams& p, std::uint32_t index) {
  std::vector<int> v(p.dims());
  for (int d = 0; d < p.dims(); ++d) {
    v[d] = int(index % p.L);
    index /= std::uint32_t(p.L);
  }
  return ZlVector(p, std::move(v));
}

std::uint32_t ZlVector::index() const {
  std::uint32_t out = 0, base = 1;
  for (int d = 0; d < params_.dims(); ++d) {
    out += std::uint32_t(coords_[d]) * base;
    base *= std::uint32_t(params_.L);
  }
  return out;
}

bool ZlVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](int c) { return c == 0; });
}

static void require_same_params(const ZlVector& x, const ZlVector& y) {
  if (!(x.params() == y.params()))
    throw ParamError("vectors live in different lattices");
}

ZlVector ZlVector::operator+(const ZlVector& o) const {
  require_same_params(*this, o);
  std::vector<int> v(coords_);
  for (size_t i = 0; i < v.size(); ++i) v[i] += o.coords_[i];
  return ZlVector(params_, std::move(v));
}

ZlVector ZlVector::operator-(const ZlVector& o) const {
  require_same_params(*this, o);
  std::vector<int> v(coords_);
  for (size_t i = 0; i < v.size(); ++i) v[i] -= o.coords_[i];
  return ZlVector(params_, std::move(v));
}

ZlVector ZlVector::operator-() const { return scaled(-1); }

ZlVector ZlVector::scaled(int c) const {
  std::vector<int> v(coords_);
  c %= params_.L;
  for (int& x : v) x *= c;
  return ZlVector(params_, std::move(v));
}

bool ZlVector::operator==(const ZlVector& o) const {
  return params_ == o.params_ && coords_ == o.coords_;
}

int pairing(const ZlVector& x, const ZlVector& y) {
  require_same_params(x, y);
  const int L = x.params().L;
  long acc = 0;
  for (int i = 0; i < x.params().g; ++i) {
    acc += long(x.coord(2 * i)) * y.coord(2 * i + 1);
    acc -= long(x.coord(2 * i + 1)) * y.coord(2 * i);
  }
  acc %= L;
  if (acc < 0) acc += L;
  return int(acc);
}

bool is_isotropic(const std::vector<ZlVector>& set) {
  for (size_t i = 0; i < set.size(); ++i)
    for (size_t j = i + 1; j < set.size(); ++j)
      if (pairing(set[i], set[j]) != 0) return false;
  return true;
}

namespace {

// Integer determinant of a k x k matrix by fraction-free elimination.
// Entries are bounded by L <= 12 and k <= 12, so int64 is ample.
long long int_det(std::vector<std::vector<long long>> m) {
  const size_t k = m.size();
  long long prev = 1;
  int sign = 1;
  for (size_t col = 0; col < k; ++col) {
    size_t piv = col;
    while (piv < k && m[piv][col] == 0) ++piv;
    if (piv == k) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      sign = -sign;
    }
    for (size_t r = col + 1; r < k; ++r) {
      for (size_t c = col + 1; c < k; ++c)
        m[r][c] = (m[col][col] * m[r][c] - m[r][col] * m[col][c]) / prev;
      m[r][col] = 0;
    }
    prev = m[col][col];
  }
  return sign * m[k - 1][k - 1];
}

void minor_gcd_rec(const std::vector<std::vector<long long>>& rows, int cols,
                   size_t k, std::vector<int>& chosen, size_t start,
                   long long& acc) {
  if (acc == 1) return;
  if (chosen.size() == k) {
    std::vector<std::vector<long long>> sub(k, std::vector<long long>(k));
    for (size_t r = 0; r < k; ++r)
      for (size_t c = 0; c < k; ++c) sub[r][c] = rows[r][chosen[c]];
    acc = std::gcd(acc, std::llabs(int_det(std::move(sub))));
    return;
  }
  for (size_t c = start; c + (k - chosen.size()) <= size_t(cols); ++c) {
    chosen.push_back(int(c));
    minor_gcd_rec(rows, cols, k, chosen, c + 1, acc);
    chosen.pop_back();
  }
}

}  // namespace

bool is_unimodular(const std::vector<ZlVector>& set) {
  if (set.empty()) return true;
  const LatticeParams& p = set.front().params();
  const size_t k = set.size();
  for (size_t i = 0; i < k; ++i) {
    require_same_params(set.front(), set[i]);
    for (size_t j = i + 1; j < k; ++j)
      if (set[i] == set[j]) throw InputError("is_unimodular: repeated vector");
  }
  if (int(k) > p.dims()) return false;

  std::vector<std::vector<long long>> rows(k, std::vector<long long>(p.dims()));
  for (size_t r = 0; r < k; ++r)
    for (int c = 0; c < p.dims(); ++c) rows[r][c] = set[r].coord(c);
  long long acc = p.L;
  std::vector<int> chosen;
  minor_gcd_rec(rows, p.dims(), k, chosen, 0, acc);
  return acc == 1;
}

int content(const ZlVector& v) {
  long long acc = v.params().L;
  for (int c : v.coords()) acc = std::gcd(acc, (long long)c);
  return int(acc);
}

int tau(int L) {
  if (L < 1) throw InputError("tau: L must be positive");
  int n = 0;
  for (int d = 1; d <= L; ++d)
    if (L % d == 0) ++n;
  return n;
}

std::vector<ZlVector> enumerate_vectors(const LatticeParams& p, std::uint64_t budget) {
  if (p.count > budget) throw BudgetError("enumerate_vectors: L^{2g} exceeds budget");
  std::vector<ZlVector> out;
  out.reserve(p.count);
  for (std::uint32_t i = 0; i < p.count; ++i) out.push_back(ZlVector::from_index(p, i));
  return out;
}

std::vector<std::pair<ZlVector, ZlVector>> enumerate_iso_uni_pairs(
    const LatticeParams& p, std::uint64_t budget) {
  auto all = enumerate_vectors(p, budget);
  std::vector<std::pair<ZlVector, ZlVector>> out;
  for (const ZlVector& w1 : all)
    for (const ZlVector& w2 : all) {
      if (w1 == w2) continue;
      if (pairing(w1, w2) != 0) continue;
      if (!is_unimodular({w1, w2})) continue;
      out.emplace_back(w1, w2);
    }
  return out;
}

ZlVector TransvectionGenerator::apply(const ZlVector& x) const {
  return x + direction.scaled(sign * pairing(x, direction));
}

std::vector<TransvectionGenerator> all_transvections(const LatticeParams& p) {
  std::vector<TransvectionGenerator> out;
  for (std::uint32_t i = 1; i < p.count; ++i) {
    ZlVector d = ZlVector::from_index(p, i);
    if (content(d) != 1) continue;
    out.push_back({d, 1});
    out.push_back({d, -1});
  }
  return out;
}

std::vector<std::uint32_t> sp_orbit_labels(const LatticeParams& p, std::uint64_t budget) {
  if (p.count > budget) throw BudgetError("sp_orbit_labels: L^{2g} exceeds budget");
  auto gens = all_transvections(p);
  const std::uint32_t n = std::uint32_t(p.count);
  const std::uint32_t unseen = n;
  std::vector<std::uint32_t> label(n, unseen);
  for (std::uint32_t root = 0; root < n; ++root) {
    if (label[root] != unseen) continue;
    std::queue<std::uint32_t> bfs;
    bfs.push(root);
    label[root] = root;
    while (!bfs.empty()) {
      ZlVector x = ZlVector::from_index(p, bfs.front());
      bfs.pop();
      for (const auto& t : gens) {
        std::uint32_t y = t.apply(x).index();
        if (label[y] == unseen) {
          label[y] = root;
          bfs.push(y);
        }
      }
    }
  }
  return label;
}

int sp_orbit_count_bfs(const LatticeParams& p, std::uint64_t budget) {
  auto label = sp_orbit_labels(p, budget);
  int orbits = 0;
  for (std::uint32_t i = 0; i < label.size(); ++i)
    if (label[i] == i) ++orbits;
  return orbits;
}

}  // namespace homlab
