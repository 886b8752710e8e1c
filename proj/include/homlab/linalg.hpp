#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homlab/errors.hpp"
#include "homlab/fields.hpp"

namespace homlab {

/// Exact sparse matrix over Q in triplet form.  No duplicate positions, no
/// stored zeros.
class SparseRationalMatrix {
 public:
  struct Entry {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    Rat value;

    bool operator==(const Entry& o) const {
      return row == o.row && col == o.col && value == o.value;
    }
  };

  SparseRationalMatrix() = default;
  SparseRationalMatrix(std::uint32_t rows, std::uint32_t cols) : rows_(rows), cols_(cols) {}

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }

  void add(std::uint32_t row, std::uint32_t col, Rat value);

  /// Columns as sparse vectors over the row-index space.
  std::vector<SparseVec<Rat>> columns() const;
  /// Rows as sparse vectors over the column-index space.
  std::vector<SparseVec<Rat>> row_vectors() const;

  SparseRationalMatrix transposed() const;
  /// Matrix * dense coefficient map (index -> value), exact.
  SparseVec<Rat> apply_to_columns(const SparseVec<Rat>& column_coeffs) const;

  bool operator==(const SparseRationalMatrix&) const = default;

 private:
  std::uint32_t rows_ = 0, cols_ = 0;
  std::vector<Entry> entries_;
};

enum class CertMode { exact, modular };

/// Outcome of a rank computation.  Exact mode also records a witness
/// r x r nonsingular minor (pivot rows and columns).
struct RankCertificate {
  std::uint32_t rank = 0;
  CertMode mode = CertMode::exact;
  std::vector<std::uint64_t> primes;        // modular mode
  std::vector<std::uint32_t> witness_rows;  // exact mode: original column ids
  std::vector<std::uint32_t> witness_cols;  // exact mode: pivot positions
};

struct ModularOptions {
  int num_primes = 2;
  int attempt = 0;
  std::uint64_t congruent_one_mod = 1;  // require p = 1 mod this
};

/// Rank of the column span.  Exact mode eliminates over Q; modular mode
/// eliminates over >= 2 primes > 2^30 and throws ModularInconsistency on
/// disagreement.
RankCertificate rank(const SparseRationalMatrix& m, CertMode mode,
                     const ModularOptions& opts = {});

struct MembershipResult {
  bool member = false;
  CertMode mode = CertMode::exact;
  std::vector<std::uint64_t> primes;
  /// Exact mode only: v = sum coeff_j * column_j, re-verified by exact
  /// multiplication before being returned.
  std::optional<SparseVec<Rat>> certificate;
};

/// Is v in the column span of m?  Exact mode returns a verified certificate.
/// In modular mode, a negative answer is definitive, a positive one holds
/// modulo every tested prime.
MembershipResult membership(const SparseVec<Rat>& v, const SparseRationalMatrix& m,
                            CertMode mode, const ModularOptions& opts = {});

/// rank(V u R) - rank(R): the dimension of the image of span(V) in the
/// quotient by span(R).  V and R are matrices of column vectors over the same
/// row space.
std::uint32_t quotient_dim(const SparseRationalMatrix& v, const SparseRationalMatrix& r,
                           CertMode mode, const ModularOptions& opts = {});

/// Basis of the right null space over Q; every vector is re-verified by exact
/// multiplication M * x = 0.
std::vector<SparseVec<Rat>> kernel_basis(const SparseRationalMatrix& m);

// --- textual triplet cache format -----------------------------------------
// header "rows cols nnz", then one line "row col numerator/denominator" per
// entry.  write_triplets is atomic (temp file + rename).

std::string to_triplet_text(const SparseRationalMatrix& m);
SparseRationalMatrix from_triplet_text(const std::string& text);
void write_triplets(const SparseRationalMatrix& m, const std::string& path);
std::optional<SparseRationalMatrix> read_triplets(const std::string& path);

// --- elimination kernel -----------------------------------------------------

/// Incremental row echelon over a field F with optional provenance tracking.
/// Inserted vectors are reduced against current pivot rows front to back;
/// a nonzero residual becomes a new pivot row normalized to leading 1.
/// Residuals are canonical coset representatives (zero at every pivot
/// column), so equality of residuals decides equality modulo the row space.
template <class F>
class Echelon {
 public:
  using E = typename F::Elem;

  Echelon(F field, std::uint32_t cols, bool track_history = false)
      : field_(field),
        cols_(cols),
        track_history_(track_history),
        pivot_(cols, -1),
        scratch_(cols, field.zero()),
        hit_(cols, 0) {}

  std::uint32_t rank() const { return std::uint32_t(rows_.size()); }
  std::uint32_t cols() const { return cols_; }

  struct InsertResult {
    bool grew = false;
    std::uint32_t pivot_col = 0;
  };

  /// Insert v (with a distinct origin id for certificates); returns whether
  /// the rank grew.
  InsertResult insert(const SparseVec<E>& v, std::uint32_t origin) {
    scatter(v);
    HistAcc hist;
    InsertResult res;
    std::uint32_t lead = reduce_scratch(hist);
    if (lead == cols_) {
      clear_scratch();
      return res;
    }
    res.grew = true;
    res.pivot_col = lead;
    append_pivot(lead, origin, hist);
    return res;
  }

  /// Canonical residual of v modulo the row space (no state change).
  SparseVec<E> residual(const SparseVec<E>& v) {
    scatter(v);
    HistAcc hist;
    reduce_scratch(hist);
    SparseVec<E> out = gather_from(0);
    clear_scratch();
    return out;
  }

  /// If v lies in the row space, the combination v = sum c_i * inserted_i
  /// (by origin id); nullopt otherwise.  Requires history tracking.
  std::optional<SparseVec<E>> solve(const SparseVec<E>& v) {
    if (!track_history_) throw InputError("echelon: solve needs history tracking");
    scatter(v);
    HistAcc hist;
    std::uint32_t lead = reduce_scratch(hist);
    clear_scratch();
    if (lead != cols_) return std::nullopt;
    // reduction computed v - sum hist_id * inserted_id = 0
    SparseVec<E> combo;
    for (std::uint32_t id : hist.touched)
      if (!field_.is_zero(hist.value[id])) combo.emplace_back(id, hist.value[id]);
    std::sort(combo.begin(), combo.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return combo;
  }

  const std::vector<std::int32_t>& pivot_of_col() const { return pivot_; }
  std::uint32_t origin_of_row(std::uint32_t r) const { return rows_[r].origin; }
  std::uint32_t lead_of_row(std::uint32_t r) const { return rows_[r].lead; }
  const SparseVec<E>& row_entries(std::uint32_t r) const { return rows_[r].entries; }

 private:
  // Accumulates, per original row id, the total coefficient subtracted from
  // the working vector during one reduction.
  struct HistAcc {
    std::vector<E> value;
    std::vector<std::uint32_t> touched;
    std::vector<char> hit;
    void ensure(std::uint32_t id) {
      if (value.size() <= id) {
        value.resize(id + 1);
        hit.resize(id + 1, 0);
      }
    }
  };

  struct Row {
    std::uint32_t lead = 0;
    std::uint32_t origin = 0;
    SparseVec<E> entries;       // leading coefficient normalized to 1
    SparseVec<E> history;       // combination of inserted originals
  };

  void scatter(const SparseVec<E>& v) {
    for (const auto& [c, val] : v) {
      if (c >= cols_) throw InputError("echelon: column index out of range");
      if (!hit_[c]) {
        hit_[c] = 1;
        touched_.push_back(c);
        scratch_[c] = val;
      } else {
        scratch_[c] = field_.add(scratch_[c], val);
      }
    }
  }

  void clear_scratch() {
    for (std::uint32_t c : touched_) {
      scratch_[c] = E{};
      hit_[c] = 0;
    }
    touched_.clear();
  }

  // Eliminate pivot columns in increasing order; returns the leading
  // unpivoted column of the residual, or cols_ if it vanished.
  std::uint32_t reduce_scratch(HistAcc& hist) {
    std::uint32_t c = cols_;
    for (std::uint32_t t : touched_)
      if (t < c && !field_.is_zero(scratch_[t])) c = t;
    while (c < cols_) {
      if (field_.is_zero(scratch_[c])) {
        c = next_nonzero(c + 1);
        continue;
      }
      std::int32_t pr = pivot_[c];
      if (pr < 0) return c;
      const E coef = scratch_[c];
      field_.row_axpy(scratch_, hit_, touched_, rows_[pr].entries, coef);
      if (track_history_)
        for (const auto& [id, hv] : rows_[pr].history) {
          hist.ensure(id);
          if (!hist.hit[id]) {
            hist.hit[id] = 1;
            hist.touched.push_back(id);
          }
          hist.value[id] = field_.add(hist.value[id], field_.mul(coef, hv));
        }
      c = next_nonzero(c + 1);
    }
    return cols_;
  }

  std::uint32_t next_nonzero(std::uint32_t from) {
    for (std::uint32_t c = from; c < cols_; ++c)
      if (hit_[c] && !field_.is_zero(scratch_[c])) return c;
    return cols_;
  }

  SparseVec<E> gather_from(std::uint32_t from) {
    SparseVec<E> out;
    std::sort(touched_.begin(), touched_.end());
    for (std::uint32_t c : touched_)
      if (c >= from && !field_.is_zero(scratch_[c])) out.emplace_back(c, scratch_[c]);
    return out;
  }

  void append_pivot(std::uint32_t lead, std::uint32_t origin, HistAcc& hist) {
    Row row;
    row.lead = lead;
    row.origin = origin;
    const E inv_lead = field_.inv(scratch_[lead]);
    std::sort(touched_.begin(), touched_.end());
    for (std::uint32_t c : touched_)
      if (!field_.is_zero(scratch_[c]))
        row.entries.emplace_back(c, field_.mul(inv_lead, scratch_[c]));
    if (track_history_) {
      // residual = v - sum hist_id * inserted_id, and the stored row is
      // residual / lead, so history = (delta_origin - hist) / lead.
      bool origin_seen = false;
      for (std::uint32_t id : hist.touched) {
        E val = hist.value[id];
        if (id == origin) {
          origin_seen = true;
          val = field_.add(field_.neg(val), field_.one());
        } else {
          val = field_.neg(val);
        }
        val = field_.mul(inv_lead, val);
        if (!field_.is_zero(val)) row.history.emplace_back(id, val);
      }
      if (!origin_seen) row.history.emplace_back(origin, inv_lead);
      std::sort(row.history.begin(), row.history.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    pivot_[lead] = std::int32_t(rows_.size());
    rows_.push_back(std::move(row));
    clear_scratch();
  }

  F field_;
  std::uint32_t cols_;
  bool track_history_;
  std::vector<Row> rows_;
  std::vector<std::int32_t> pivot_;
  std::vector<E> scratch_;
  std::vector<char> hit_;
  std::vector<std::uint32_t> touched_;
};

}  // namespace homlab
