#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "homlab/fox.hpp"
#include "homlab/linalg.hpp"

namespace homlab {

/// Cellular chain complex of the universal abelian Z/L-cover of the closed
/// surface (one 0-cell, 2g 1-cells, one 2-cell with relator
/// prod [alpha_i, beta_i]) or of the once-bounded surface (no 2-cell).
/// Lifted 1-cells are indexed (j, h) -> j * |H| + h; lifted 0- and 2-cells by
/// the deck element h.
class CoverComplex {
 public:
  static CoverComplex build(const LatticeParams& p, bool closed,
                            std::uint64_t budget = 1u << 22);

  const LatticeParams& params() const { return params_; }
  bool closed() const { return closed_; }
  std::uint32_t c1_dim() const { return std::uint32_t(params_.count) * params_.dims(); }

  const SparseRationalMatrix& d1() const { return d1_; }
  const SparseRationalMatrix& d2() const { return d2_; }  // closed only
  const SparseRationalMatrix& projection() const { return projection_; }
  /// Translates of the relator chain, as columns; in the bounded complex
  /// these are the boundary-component cycles, in the closed one this is d2.
  const SparseRationalMatrix& relator_translates() const { return d2_; }

  std::uint32_t rank_d1() const { return rank_d1_; }
  std::uint32_t rank_d2() const { return rank_d2_; }

  /// 1-chain of a word, as a sparse vector over the lifted 1-cells.
  SparseVec<Rat> chain_of(const FreeWord& w) const;
  /// Deck translation of a 1-chain by v.
  SparseVec<Rat> translate_chain(const SparseVec<Rat>& chain, const ZlVector& v) const;

  /// Canonical H_1 coordinates of a word with trivial mod-L abelianization:
  /// the chain, reduced modulo im d2 in the closed case.  Equal classes in
  /// H_1 of the cover yield equal coordinate vectors.
  SparseVec<Rat> cycle_class(const FreeWord& w) const;
  /// Canonical H_1 coordinates of an arbitrary 1-cycle.
  SparseVec<Rat> cycle_class(const SparseVec<Rat>& cycle) const;

  /// Class of [x, y]^f; depends on f only through its mod-L abelianization.
  SparseVec<Rat> bracket_class(const FreeWord& x, const FreeWord& y,
                               const FreeWord& f) const;
  /// Class of [x, y] conjugated by any word with abelianization u.
  SparseVec<Rat> bracket_class_at(const FreeWord& x, const FreeWord& y,
                                  const ZlVector& u) const;

  /// Boundary-component class kappa(v): the deck translate by v of the
  /// relator cycle.
  SparseVec<Rat> kappa(const ZlVector& v) const;

 private:
  LatticeParams params_;
  bool closed_ = false;
  SparseRationalMatrix d1_, d2_, projection_;
  std::uint32_t rank_d1_ = 0, rank_d2_ = 0;
  FoxChain relator_chain_{LatticeParams{}, {}};
  // reduction state for the closed case; guarded because echelon queries
  // share scratch buffers
  mutable std::unique_ptr<Echelon<FieldQ>> im_d2_;
  mutable std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
};

struct H1Dims {
  std::uint32_t h1 = 0;     // dim H_1(cover; Q)
  std::uint32_t c_dim = 0;  // dim of the kernel of H_1(cover) -> H_1(surface)
  std::uint32_t i_dim = 0;  // rank of the relator-translate cycles (bounded model)
};

/// Homology dimensions with the Euler-characteristic cross-checks applied.
H1Dims h1_dims(const CoverComplex& c);

struct IdentityReport {
  std::string name;
  long checked = 0;
  long failures = 0;
  std::string first_witness;

  bool passed() const { return failures == 0 && checked > 0; }
};

/// Machine checks of the commutator-calculus identities in the cover's H_1
/// (both items of the subgroup lemma and all three product identities).
/// At (g, L) = (1, 2) the word domains are exhaustive: every argument ranges
/// over all freely reduced words of length <= max_len (with a total-length
/// cap of 3 * max_len / 2 for three-word identities); larger configurations
/// use sample_count seeded random tuples per identity.
std::vector<IdentityReport> verify_commutator_identities(const LatticeParams& p,
                                                         bool closed, int max_len,
                                                         long sample_count,
                                                         std::uint64_t seed);

struct IStructureReport {
  std::uint32_t i_dim = 0;
  bool kernel_is_theta_line = false;  // ker of translate matrix = <all-ones>
  bool translation_permutes = false;  // v . kappa(w) = kappa(v + w)
  bool action_free = false;           // v != 0 never fixes a class
  bool passed() const {
    return kernel_is_theta_line && translation_permutes && action_free;
  }
};

/// Structure of the boundary-class span: dimension |H| - 1, the single
/// relation sum_v kappa(v) = 0, and the free translation action.
IStructureReport verify_I_structure(const LatticeParams& p,
                                    std::uint64_t budget = 1u << 22);

}  // namespace homlab
