#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homlab/lattice.hpp"
#include "homlab/linalg.hpp"

namespace homlab {

/// A span problem in the free module Q^{|H| x n_pairs} (column index
/// v * n_pairs + pair) whose column families are closed under the deck
/// translation v -> v + u.  Each family is generated by the H-translates of
/// explicit base rows.  Such spans split along the characters of H, which
/// reduces rank, membership, and quotient questions to |H| independent
/// eliminations over n_pairs columns: exactly (rational characters) when
/// L = 2, and modulo primes p = 1 (mod L) otherwise.
struct TranslationModule {
  struct Term {
    std::uint32_t offset = 0;  // deck element, as a vector index
    std::uint32_t pair = 0;
    long coeff = 0;
  };
  using BaseRow = std::vector<Term>;

  LatticeParams params;
  std::uint32_t n_pairs = 0;
  /// Ordered stages: stage 0 then stage 1, ... (cumulative spans).
  std::vector<std::vector<BaseRow>> stages;

  std::uint64_t total_cols() const { return params.count * n_pairs; }
  std::uint32_t col(std::uint32_t v, std::uint32_t pair) const {
    return v * n_pairs + pair;
  }

  /// All H-translates of every base row of stage k, as columns of a matrix
  /// over the full module (for cross-checks and certificate verification).
  SparseRationalMatrix expand_stage(std::size_t k) const;
  /// Translate of one base row, as a sparse vector over the full module.
  SparseVec<Rat> expand_row(std::size_t stage, std::size_t row, std::uint32_t u) const;
};

struct TranslationQuery {
  std::size_t stage = 0;          // test against the span of stages 0..stage
  SparseVec<Rat> vector;          // over the full module coordinates
  bool want_certificate = false;  // exact mode only
};

struct TranslationCertTerm {
  std::uint32_t stage = 0;
  std::uint32_t row = 0;
  std::uint32_t translate = 0;
  Rat coeff;
};

struct TranslationQueryResult {
  bool member = false;
  std::optional<std::vector<TranslationCertTerm>> certificate;
};

struct TranslationSolveResult {
  std::vector<std::uint64_t> ranks;        // cumulative rank after each stage
  std::vector<std::uint64_t> group_ranks;  // rank of each extra group mod its stage
  std::vector<TranslationQueryResult> queries;
  CertMode mode = CertMode::exact;
  std::vector<std::uint64_t> primes;  // modular mode
};

struct TranslationSolveOptions {
  CertMode mode = CertMode::exact;  // exact requires L = 2
  ModularOptions modular;
  int threads = 1;
  bool with_certificates = false;  // disables the collapse fast path
};

/// Solve ranks and memberships for a translation-closed span.  `groups` are
/// optional sets of arbitrary (not necessarily translation-closed) vectors
/// whose rank modulo the cumulative span of stages 0..group_stage[i] is
/// wanted.  Modular mode runs >= 2 primes p = 1 (mod L) and throws
/// ModularInconsistency if ranks or verdicts disagree; exact mode (L = 2
/// only) re-verifies every requested certificate against the expanded rows.
TranslationSolveResult translation_solve(
    const TranslationModule& m, const std::vector<TranslationQuery>& queries,
    const std::vector<std::vector<SparseVec<Rat>>>& groups,
    const std::vector<std::size_t>& group_stage, const TranslationSolveOptions& opts);

inline TranslationSolveResult translation_solve(const TranslationModule& m,
                                                const std::vector<TranslationQuery>& queries,
                                                const TranslationSolveOptions& opts) {
  return translation_solve(m, queries, {}, {}, opts);
}

/// Exact recombination sum of a certificate, for re-verification.
SparseVec<Rat> apply_certificate(const TranslationModule& m,
                                 const std::vector<TranslationCertTerm>& cert);

}  // namespace homlab
