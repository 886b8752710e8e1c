#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homlab/group_ring.hpp"
#include "homlab/lattice.hpp"
#include "homlab/report.hpp"
#include "homlab/translation.hpp"

namespace homlab {

/// One abstract generator X(v, w1, w2) with its canonical column index.
struct XGenerator {
  ZlVector v, w1, w2;
  std::uint64_t index = 0;
};

/// Canonical index for the generators X(v, w1, w2): ordered isotropic
/// unimodular pairs (w1, w2) sorted by (index(w1), index(w2)), generator
/// index = index(v) * n_pairs + pair_rank (lexicographic in (v, w1, w2)).
class XGeneratorTable {
 public:
  static XGeneratorTable build(const LatticeParams& p, std::uint64_t budget = 1u << 21);

  const LatticeParams& params() const { return params_; }
  std::uint32_t n_pairs() const { return std::uint32_t(pairs_.size()); }
  std::uint64_t generator_count() const { return params_.count * pairs_.size(); }

  const std::pair<ZlVector, ZlVector>& pair(std::uint32_t id) const { return pairs_[id]; }
  /// Pair id of (w1, w2), if it is a valid generator pair.
  std::optional<std::uint32_t> pair_id(const ZlVector& w1, const ZlVector& w2) const;
  std::uint32_t require_pair(const ZlVector& w1, const ZlVector& w2) const;

  std::uint64_t index_of(const ZlVector& v, std::uint32_t pair_id) const {
    return std::uint64_t(v.index()) * pairs_.size() + pair_id;
  }
  XGenerator generator(std::uint64_t index) const;

  /// psi(X(v, w1, w2)) as an element of B (basis rho[u], u in H).
  GroupRingElement psi_of(const ZlVector& v, std::uint32_t pair_id) const;

 private:
  LatticeParams params_;
  std::vector<std::pair<ZlVector, ZlVector>> pairs_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> pair_rank_;
};

/// The four relation families, held as translation base rows (all relations
/// are the H-translates of these).
struct RelationTable {
  std::vector<TranslationModule::BaseRow> r1, r2, r3, r4;
  std::uint64_t r4_w3_instances = 0;

  std::vector<TranslationModule::BaseRow> all() const;
  std::uint64_t base_count() const { return r1.size() + r2.size() + r3.size() + r4.size(); }
};

/// Relations instantiated over the generator table; every referenced X is
/// checked to be a valid generator.
RelationTable enumerate_relations(const XGeneratorTable& table);

/// The V-families and the section-8 subfamilies and B-subspaces.
struct VCatalog {
  // translation-closed families, as pair-id lists (membership for every v)
  std::vector<std::uint32_t> v1_pairs, v2_pairs, v3_pairs;
  std::vector<std::uint32_t> v1I_pairs, v1A_pairs, v1B_pairs;
  // v-restricted subfamilies, as explicit generator indices
  std::vector<std::uint64_t> v1A1, v1A2, v1A3, v1B1, v1B2, v1B3;
  // B-subspace bases, as vector indices into H
  std::vector<std::uint32_t> b1_basis, b2_basis, b3_basis;

  std::uint64_t dim_b1() const { return b1_basis.size(); }
};

VCatalog enumerate_V(const XGeneratorTable& table);

/// Matrix of psi over the chosen generator columns (rows = |H|).
SparseRationalMatrix psi_matrix(const XGeneratorTable& table,
                                const std::vector<std::uint64_t>& generators);
/// Columns psi(X(v, p)) for every v in H and p in pair_ids.
SparseRationalMatrix psi_matrix_pairs(const XGeneratorTable& table,
                                      const std::vector<std::uint32_t>& pair_ids);

/// Shared context for the section-7/8 verifications.
struct PresentationContext {
  XGeneratorTable table;
  RelationTable relations;
  VCatalog catalog;

  static PresentationContext build(const LatticeParams& p,
                                   std::uint64_t budget = 1u << 21);

  /// Stage layout [relations, V1 units, V2 units, V3 units] as a translation
  /// module; prefix spans: M1 = relations u V1, etc.
  TranslationModule module_R_V1_V2_V3() const;

  CertMode pick_mode(const std::string& requested, std::uint32_t exact_col_cap) const;
};

// Each verification returns the checks it performed.  `mode` is exact |
// modular | hybrid (hybrid picks exact iff the column count fits the cap).

std::vector<Check> verify_psi_kills_relations(const PresentationContext& ctx,
                                              long sample_count, std::uint64_t seed);
std::vector<Check> verify_family_counts(const PresentationContext& ctx);
std::vector<Check> verify_v1injective(const PresentationContext& ctx);
std::vector<Check> verify_newrelation1(const PresentationContext& ctx,
                                       const std::string& mode, std::uint32_t col_cap,
                                       long sample_count, std::uint64_t seed, int threads);
std::vector<Check> verify_eliminatev3(const PresentationContext& ctx,
                                      const std::string& mode, std::uint32_t col_cap,
                                      int threads);
std::vector<Check> verify_newrelation2(const PresentationContext& ctx,
                                       const std::string& mode, std::uint32_t col_cap,
                                       long sample_count, std::uint64_t seed, int threads);
std::vector<Check> verify_psiinjective(const PresentationContext& ctx,
                                       const std::string& mode, std::uint32_t col_cap,
                                       int threads);
std::vector<Check> verify_claims(const PresentationContext& ctx, const std::string& mode,
                                 std::uint32_t col_cap, int threads);

/// The pure-arithmetic counting identities for 1 <= g <= g_max, 2 <= L <= L_max.
std::vector<Check> verify_counting_identities(int g_max, int L_max);

}  // namespace homlab
