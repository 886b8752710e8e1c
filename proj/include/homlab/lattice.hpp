#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "homlab/errors.hpp"

namespace homlab {

/// Parameters of the lattice H = (Z/L)^{2g} with its symplectic pairing.
/// Coordinates are ordered (a_1, b_1, ..., a_g, b_g); vector indices are
/// mixed-radix base L with the a_1 coordinate least significant.
struct LatticeParams {
  int g = 1;
  int L = 2;
  std::uint64_t count = 4;  // L^{2g}

  static LatticeParams make(int g, int L);

  int dims() const { return 2 * g; }
  bool operator==(const LatticeParams&) const = default;

  // Index arithmetic on the additive group, avoiding materialized coords.
  std::uint32_t add_index(std::uint32_t i, std::uint32_t j) const;
  std::uint32_t sub_index(std::uint32_t i, std::uint32_t j) const;
  std::uint32_t neg_index(std::uint32_t i) const;
};

/// An element of (Z/L)^{2g}.  Coordinates are reduced representatives in [0, L).
class ZlVector {
 public:
  ZlVector() = default;
  ZlVector(LatticeParams params, std::vector<int> coords);
  static ZlVector zero(const LatticeParams& p);
  static ZlVector basis_a(const LatticeParams& p, int i);  // a_{i+1}, 0-based i
  static ZlVector basis_b(const LatticeParams& p, int i);
  static ZlVector basis(const LatticeParams& p, int c);  // c-th coordinate vector
  static ZlVector from_index(const LatticeParams& p, std::uint32_t index);

  const LatticeParams& params() const { return params_; }
  const std::vector<int>& coords() const { return coords_; }
  int coord(int i) const { return coords_[i]; }

  std::uint32_t index() const;
  bool is_zero() const;

  ZlVector operator+(const ZlVector& o) const;
  ZlVector operator-(const ZlVector& o) const;
  ZlVector operator-() const;
  ZlVector scaled(int c) const;
  bool operator==(const ZlVector& o) const;
  bool operator!=(const ZlVector& o) const { return !(*this == o); }

 private:
  LatticeParams params_;
  std::vector<int> coords_;
};

/// Symplectic form: i(x, y) = sum_j (x_{a_j} y_{b_j} - x_{b_j} y_{a_j}) mod L,
/// normalized so that i(a_j, b_j) = 1.
int pairing(const ZlVector& x, const ZlVector& y);

/// True iff all pairwise pairings vanish.  Empty collections are isotropic.
bool is_isotropic(const std::vector<ZlVector>& set);

/// True iff the span of the (pairwise distinct) vectors is a free rank-k
/// direct summand of (Z/L)^{2g}.  Decided by the minor-gcd criterion: lift to
/// integer representatives and test gcd(L, all k x k minors) == 1.
bool is_unimodular(const std::vector<ZlVector>& set);

/// Largest divisor c of L with v = c * (primitive vector); content(0) = L.
int content(const ZlVector& v);

/// Number of positive divisors of L.
int tau(int L);

/// All L^{2g} vectors in index order.  Throws BudgetError above the cap.
std::vector<ZlVector> enumerate_vectors(const LatticeParams& p,
                                        std::uint64_t budget = 1u << 20);

/// Ordered pairs (w1, w2) of distinct vectors with {w1, w2} isotropic and
/// unimodular, sorted by (index(w1), index(w2)).
std::vector<std::pair<ZlVector, ZlVector>> enumerate_iso_uni_pairs(
    const LatticeParams& p, std::uint64_t budget = 1u << 20);

/// A symplectic transvection x -> x + sign * i(x, d) * d along a primitive
/// direction d.  These preserve the pairing and generate the Sp-action used
/// for orbit enumeration.
struct TransvectionGenerator {
  ZlVector direction;
  int sign = 1;  // +1 or -1

  ZlVector apply(const ZlVector& x) const;
};

/// All transvections along primitive directions, both signs.
std::vector<TransvectionGenerator> all_transvections(const LatticeParams& p);

/// Number of orbits of the transvection closure on H.  Intended for small
/// (g, L); equals tau(L) by the orbit classification through contents.
int sp_orbit_count_bfs(const LatticeParams& p, std::uint64_t budget = 1u << 20);

/// Orbit label (BFS root index) per vector index; used to cross-check that
/// orbits coincide with content classes.
std::vector<std::uint32_t> sp_orbit_labels(const LatticeParams& p,
                                           std::uint64_t budget = 1u << 20);

}  // namespace homlab
