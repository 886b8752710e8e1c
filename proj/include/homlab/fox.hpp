#pragma once

#include <string>
#include <vector>

#include "homlab/group_ring.hpp"
#include "homlab/lattice.hpp"

namespace homlab {

/// A freely reduced word in the surface-group generators
/// (alpha_1, beta_1, ..., alpha_g, beta_g).  Letters are stored as signed
/// 1-based generator indices: +(j+1) for generator j, -(j+1) for its inverse.
/// Generator j corresponds to the j-th lattice coordinate, so alpha_i maps to
/// a_i and beta_i to b_i under abelianization.
class FreeWord {
 public:
  explicit FreeWord(LatticeParams params) : params_(params) {}
  FreeWord(LatticeParams params, std::vector<int> letters);

  static FreeWord generator(const LatticeParams& p, int j, int exponent = 1);
  /// Compact syntax: "a1 B1 a2" with lowercase = generator and uppercase =
  /// inverse; a<i>/b<i> are alpha_i / beta_i, 1-based.
  static FreeWord parse(const LatticeParams& p, const std::string& text);
  /// The surface relator prod_i [alpha_i, beta_i]; also the boundary word of
  /// the once-bounded surface.
  static FreeWord relator(const LatticeParams& p);

  const LatticeParams& params() const { return params_; }
  const std::vector<int>& letters() const { return letters_; }
  int length() const { return int(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  std::string str() const;

  FreeWord operator*(const FreeWord& o) const;
  FreeWord inverse() const;
  FreeWord power(int n) const;
  /// f^{-1} * (*this) * f.
  FreeWord conjugated(const FreeWord& f) const;
  bool operator==(const FreeWord& o) const {
    return params_ == o.params_ && letters_ == o.letters_;
  }

  /// Integer letter-count homomorphism and its mod-L reduction.
  std::vector<long> abelianize_int() const;
  ZlVector abelianize() const;

 private:
  void reduce();

  LatticeParams params_;
  std::vector<int> letters_;
};

/// [x, y] = x^{-1} y^{-1} x y.
FreeWord commutator(const FreeWord& x, const FreeWord& y);

/// Fox derivative of w along generator j, projected to Q[H] along the mod-L
/// abelianization: d(x_j)/d(x_j) = rho[0], d(x_j^{-1})/d(x_j) = -rho[-a_j],
/// d(uv)/d(x_j) = du/d(x_j) + u_bar * dv/d(x_j).
GroupRingElement fox_derivative(const FreeWord& w, int j);

/// The vector of all 2g Fox derivatives: the 1-chain of the lifted word in
/// the cover's cellular complex.
struct FoxChain {
  LatticeParams params;
  std::vector<GroupRingElement> components;  // size 2g

  bool operator==(const FoxChain& o) const {
    return params == o.params && components == o.components;
  }
};

FoxChain fox_chain(const FreeWord& w);

}  // namespace homlab
