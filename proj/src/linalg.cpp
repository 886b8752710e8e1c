#include "homlab/linalg.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace homlab {

void SparseRationalMatrix::add(std::uint32_t row, std::uint32_t col, Rat value) {
  if (row >= rows_ || col >= cols_) throw InputError("matrix entry out of bounds");
  if (sgn(value) == 0) return;
  entries_.push_back(Entry{row, col, std::move(value)});
}

std::vector<SparseVec<Rat>> SparseRationalMatrix::columns() const {
  std::vector<SparseVec<Rat>> cols(cols_);
  for (const Entry& e : entries_) cols[e.col].emplace_back(e.row, e.value);
  for (auto& c : cols)
    std::sort(c.begin(), c.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  return cols;
}

std::vector<SparseVec<Rat>> SparseRationalMatrix::row_vectors() const {
  std::vector<SparseVec<Rat>> rows(rows_);
  for (const Entry& e : entries_) rows[e.row].emplace_back(e.col, e.value);
  for (auto& r : rows)
    std::sort(r.begin(), r.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  return rows;
}

SparseRationalMatrix SparseRationalMatrix::transposed() const {
  SparseRationalMatrix t(cols_, rows_);
  for (const Entry& e : entries_) t.add(e.col, e.row, e.value);
  return t;
}

SparseVec<Rat> SparseRationalMatrix::apply_to_columns(const SparseVec<Rat>& coeffs) const {
  std::map<std::uint32_t, Rat> acc;
  auto cols = columns();
  for (const auto& [j, c] : coeffs) {
    if (j >= cols_) throw InputError("coefficient index out of bounds");
    for (const auto& [r, v] : cols[j]) acc[r] += c * v;
  }
  SparseVec<Rat> out;
  for (auto& [r, v] : acc)
    if (sgn(v) != 0) out.emplace_back(r, std::move(v));
  return out;
}

namespace {

// Reduce a rational sparse vector mod p; returns false if any denominator
// vanishes mod p (a "bad" prime for this data).
bool vec_mod_p(const SparseVec<Rat>& v, const FieldFp& f, SparseVec<std::uint64_t>& out) {
  out.clear();
  for (const auto& [i, q] : v) {
    std::uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), f.p);
    if (den == 0) return false;
    std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), f.p);
    std::uint64_t val = f.mul(num, f.inv(den));
    if (val != 0) out.emplace_back(i, val);
  }
  return true;
}

std::vector<std::uint64_t> pick_primes(const ModularOptions& opts) {
  std::vector<std::uint64_t> primes;
  int base = opts.attempt * std::max(opts.num_primes, 1);
  for (int i = 0; i < std::max(opts.num_primes, 2); ++i)
    primes.push_back(verification_prime(base + i, opts.congruent_one_mod));
  return primes;
}

std::uint32_t rank_mod_p(const std::vector<SparseVec<Rat>>& cols, std::uint32_t dim,
                         std::uint64_t p) {
  FieldFp f(p);
  Echelon<FieldFp> ech(f, dim);
  SparseVec<std::uint64_t> tmp;
  std::uint32_t id = 0;
  for (const auto& c : cols) {
    if (!vec_mod_p(c, f, tmp)) throw ModularInconsistency("bad prime for matrix data");
    ech.insert(tmp, id++);
  }
  return ech.rank();
}

}  // namespace

RankCertificate rank(const SparseRationalMatrix& m, CertMode mode,
                     const ModularOptions& opts) {
  auto cols = m.columns();
  RankCertificate cert;
  cert.mode = mode;
  if (mode == CertMode::exact) {
    Echelon<FieldQ> ech(FieldQ{}, m.rows());
    for (std::uint32_t j = 0; j < cols.size(); ++j) {
      auto res = ech.insert(cols[j], j);
      if (res.grew) {
        cert.witness_cols.push_back(j);
        cert.witness_rows.push_back(res.pivot_col);
      }
    }
    cert.rank = ech.rank();
    return cert;
  }
  // on disagreement or a bad prime, retry once with fresh primes
  ModularOptions local = opts;
  for (;; ++local.attempt) {
    try {
      cert.primes = pick_primes(local);
      bool first = true;
      for (std::uint64_t p : cert.primes) {
        std::uint32_t r = rank_mod_p(cols, m.rows(), p);
        if (first) {
          cert.rank = r;
          first = false;
        } else if (r != cert.rank) {
          throw ModularInconsistency("rank disagrees between primes");
        }
      }
      return cert;
    } catch (const ModularInconsistency&) {
      if (local.attempt >= opts.attempt + 1) throw;
      cert.primes.clear();
    }
  }
}

MembershipResult membership(const SparseVec<Rat>& v, const SparseRationalMatrix& m,
                            CertMode mode, const ModularOptions& opts) {
  MembershipResult res;
  res.mode = mode;
  auto cols = m.columns();
  if (mode == CertMode::exact) {
    Echelon<FieldQ> ech(FieldQ{}, m.rows(), /*track_history=*/true);
    for (std::uint32_t j = 0; j < cols.size(); ++j) ech.insert(cols[j], j);
    auto combo = ech.solve(v);
    res.member = combo.has_value();
    if (combo) {
      if (m.apply_to_columns(*combo) != v)
        throw std::logic_error("membership certificate failed exact re-verification");
      res.certificate = std::move(combo);
    }
    return res;
  }
  res.primes = pick_primes(opts);
  res.member = true;
  SparseVec<std::uint64_t> tmp;
  for (std::uint64_t p : res.primes) {
    FieldFp f(p);
    Echelon<FieldFp> ech(f, m.rows());
    SparseVec<std::uint64_t> t2;
    std::uint32_t id = 0;
    for (const auto& c : cols) {
      if (!vec_mod_p(c, f, t2)) throw ModularInconsistency("bad prime for matrix data");
      ech.insert(t2, id++);
    }
    if (!vec_mod_p(v, f, tmp)) throw ModularInconsistency("bad prime for query");
    if (!ech.residual(tmp).empty()) {
      res.member = false;  // definitive over Q
      break;
    }
  }
  return res;
}

std::uint32_t quotient_dim(const SparseRationalMatrix& v, const SparseRationalMatrix& r,
                           CertMode mode, const ModularOptions& opts) {
  if (v.rows() != r.rows()) throw ParamError("quotient_dim: row dimension mismatch");
  auto vcols = v.columns();
  auto rcols = r.columns();
  auto run_exact = [&]() -> std::uint32_t {
    Echelon<FieldQ> ech(FieldQ{}, r.rows());
    std::uint32_t id = 0;
    for (const auto& c : rcols) ech.insert(c, id++);
    std::uint32_t rank_r = ech.rank();
    for (const auto& c : vcols) ech.insert(c, id++);
    return ech.rank() - rank_r;
  };
  auto run_mod = [&](std::uint64_t p) -> std::uint32_t {
    FieldFp f(p);
    Echelon<FieldFp> ech(f, r.rows());
    SparseVec<std::uint64_t> tmp;
    std::uint32_t id = 0;
    for (const auto& c : rcols) {
      if (!vec_mod_p(c, f, tmp)) throw ModularInconsistency("bad prime");
      ech.insert(tmp, id++);
    }
    std::uint32_t rank_r = ech.rank();
    for (const auto& c : vcols) {
      if (!vec_mod_p(c, f, tmp)) throw ModularInconsistency("bad prime");
      ech.insert(tmp, id++);
    }
    return ech.rank() - rank_r;
  };
  if (mode == CertMode::exact) return run_exact();
  auto primes = pick_primes(opts);
  std::uint32_t out = 0;
  bool first = true;
  for (std::uint64_t p : primes) {
    std::uint32_t q = run_mod(p);
    if (first) {
      out = q;
      first = false;
    } else if (q != out) {
      throw ModularInconsistency("quotient dimension disagrees between primes");
    }
  }
  return out;
}

std::vector<SparseVec<Rat>> kernel_basis(const SparseRationalMatrix& m) {
  Echelon<FieldQ> ech(FieldQ{}, m.cols());
  auto rows = m.row_vectors();
  for (std::uint32_t i = 0; i < rows.size(); ++i) ech.insert(rows[i], i);

  const auto& pivot = ech.pivot_of_col();
  // gather echelon rows sorted by decreasing lead
  std::vector<std::uint32_t> pivot_cols;
  for (std::uint32_t c = 0; c < m.cols(); ++c)
    if (pivot[c] >= 0) pivot_cols.push_back(c);

  std::vector<SparseVec<Rat>> basis;
  for (std::uint32_t f = 0; f < m.cols(); ++f) {
    if (pivot[f] >= 0) continue;
    std::vector<Rat> x(m.cols(), Rat(0));
    x[f] = 1;
    for (auto it = pivot_cols.rbegin(); it != pivot_cols.rend(); ++it) {
      std::uint32_t lead = *it;
      const auto& row = ech.row_entries(std::uint32_t(pivot[lead]));
      Rat dot(0);
      for (const auto& [c, val] : row)
        if (c > lead) dot += val * x[c];
      x[lead] = -dot;  // leading coefficient is 1
    }
    SparseVec<Rat> sx;
    for (std::uint32_t c = 0; c < m.cols(); ++c)
      if (sgn(x[c]) != 0) sx.emplace_back(c, x[c]);
    // exact re-verification M * x = 0
    std::map<std::uint32_t, Rat> check;
    for (const auto& e : m.entries()) check[e.row] += e.value * x[e.col];
    for (auto& [r, val] : check)
      if (sgn(val) != 0) throw std::logic_error("kernel vector failed M*x=0 check");
    basis.push_back(std::move(sx));
  }
  return basis;
}

// --- triplet format ---------------------------------------------------------

std::string to_triplet_text(const SparseRationalMatrix& m) {
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (const auto& e : m.entries())
    os << e.row << ' ' << e.col << ' ' << e.value.get_str() << '\n';
  return os.str();
}

SparseRationalMatrix from_triplet_text(const std::string& text) {
  std::istringstream is(text);
  std::uint64_t rows = 0, cols = 0, nnz = 0;
  if (!(is >> rows >> cols >> nnz)) throw InputError("triplet header malformed");
  SparseRationalMatrix m{std::uint32_t(rows), std::uint32_t(cols)};
  for (std::uint64_t i = 0; i < nnz; ++i) {
    std::uint32_t r, c;
    std::string frac;
    if (!(is >> r >> c >> frac)) throw InputError("triplet entry malformed");
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), frac.c_str(), 10) != 0)
      throw InputError("triplet value malformed: " + frac);
    q.canonicalize();
    m.add(r, c, q);
  }
  return m;
}

void write_triplets(const SparseRationalMatrix& m, const std::string& path) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp);
    if (!os) throw std::runtime_error("cannot open cache file " + tmp.string());
    os << to_triplet_text(m);
  }
  fs::rename(tmp, target);
}

std::optional<SparseRationalMatrix> read_triplets(const std::string& path) {
  std::ifstream is(path);
  if (!is) return std::nullopt;
  std::stringstream buf;
  buf << is.rdbuf();
  try {
    return from_triplet_text(buf.str());
  } catch (const InputError&) {
    return std::nullopt;  // corrupt cache entries are rebuilt by callers
  }
}

}  // namespace homlab
