#pragma once

#include <cstdint>

#include "homlab/fields.hpp"
#include "homlab/lattice.hpp"

namespace homlab {

/// An element of the rational group ring Q[H], H = (Z/L)^{2g}: a finitely
/// supported map from vector indices to exact rationals.  The same type
/// serves as the space with formal basis {rho[v] : v in H}, identifying the
/// basis symbol rho[v] with the group element v.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(LatticeParams params) : params_(params) {}

  static GroupRingElement basis(const LatticeParams& p, const ZlVector& v);  // rho[v]
  static GroupRingElement basis(const LatticeParams& p, std::uint32_t index);
  static GroupRingElement theta(const LatticeParams& p);  // sum of all group elements

  const LatticeParams& params() const { return params_; }
  const SparseVec<Rat>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  Rat coeff(std::uint32_t index) const;

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator-() const;
  GroupRingElement scaled(const Rat& c) const;
  /// Convolution product.
  GroupRingElement operator*(const GroupRingElement& o) const;
  /// Translation by the group element v (product with rho[v]).
  GroupRingElement translated(const ZlVector& v) const;
  GroupRingElement translated(std::uint32_t index) const;

  bool operator==(const GroupRingElement& o) const;
  bool operator!=(const GroupRingElement& o) const { return !(*this == o); }

  void add_term(std::uint32_t index, const Rat& c);

 private:
  void normalize();

  LatticeParams params_;
  SparseVec<Rat> coeffs_;  // kept sorted, no zeros
  bool dirty_ = false;
};

/// Sum of coefficients; the ring homomorphism onto Q with epsilon(v) = 1.
Rat augmentation(const GroupRingElement& e);

/// Splitting Q[H] = Q*theta (+) I(H): returns (trivial part, ideal part) with
/// trivial = (eps(e)/|H|) * theta and eps(ideal) = 0.
struct Decomposition {
  Rat theta_multiple;            // e's theta-component is theta_multiple * theta
  GroupRingElement trivial;      // theta_multiple * theta
  GroupRingElement ideal;        // e - trivial, augmentation zero
};
Decomposition decompose(const GroupRingElement& e);

/// rho[v] - rho[v+w1] - rho[v+w2] + rho[v+w1+w2], requiring {w1, w2}
/// isotropic and unimodular (set check_pair = false only when assembling
/// relation rows whose validity is established elsewhere).
GroupRingElement psi_image(const ZlVector& v, const ZlVector& w1, const ZlVector& w2,
                           bool check_pair = true);

/// Formal boundary of a T2-type class: rho[f] - rho[f+y] - rho[f+z]
/// + rho[f+y+z].  Same formula as psi_image but with no constraint on (y, z).
/// (T1-type classes have boundary identically zero; nothing to compute.)
GroupRingElement boundary_T2(const ZlVector& f, const ZlVector& y, const ZlVector& z);

/// Formal boundary of a T3-type class:
/// sum_{k=0}^{L-1} (rho[f + k x + y] - rho[f + k x + y + z]).
GroupRingElement boundary_T3(const ZlVector& f, const ZlVector& x, const ZlVector& y,
                             const ZlVector& z);

/// sum_{k=0}^{L-1} boundary_T2(f + k y, y, z) == 0, exactly.
bool verify_case3_cancellation(const ZlVector& f, const ZlVector& y, const ZlVector& z);

/// sum_{k=0}^{L-1} boundary_T3(f + k z, x, y, z) == 0, exactly (the double sum
/// whose inner part telescopes).
bool verify_case4_telescoping(const ZlVector& f, const ZlVector& x, const ZlVector& y,
                              const ZlVector& z);

// cache format: header "g L nnz", one line "vector-index numerator denominator"
// per coefficient
std::string to_cache_text(const GroupRingElement& e);
GroupRingElement group_ring_from_cache_text(const std::string& text);

}  // namespace homlab
