#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "homlab/linalg.hpp"

using namespace homlab;

namespace {

SparseRationalMatrix random_matrix(std::uint32_t rows, std::uint32_t cols, double density,
                                   std::mt19937_64& rng) {
  SparseRationalMatrix m(rows, cols);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> val(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  for (std::uint32_t r = 0; r < rows; ++r)
    for (std::uint32_t c = 0; c < cols; ++c)
      if (u(rng) < density) {
        int v = val(rng);
        if (v != 0) {
          Rat q(v, den(rng));
          q.canonicalize();
          m.add(r, c, q);
        }
      }
  return m;
}

SparseRationalMatrix identity(std::uint32_t n) {
  SparseRationalMatrix m(n, n);
  for (std::uint32_t i = 0; i < n; ++i) m.add(i, i, Rat(1));
  return m;
}

}  // namespace

TEST_CASE("rank of simple matrices") {
  CHECK(rank(identity(5), CertMode::exact).rank == 5);
  CHECK(rank(SparseRationalMatrix(4, 7), CertMode::exact).rank == 0);

  SparseRationalMatrix m(2, 2);
  m.add(0, 0, Rat(1));
  m.add(0, 1, Rat(2));
  m.add(1, 0, Rat(2));
  m.add(1, 1, Rat(4));
  CHECK(rank(m, CertMode::exact).rank == 1);
}

TEST_CASE("rank equals transpose rank and is permutation invariant") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<std::uint32_t> dim(1, 18);
  for (int t = 0; t < 40; ++t) {
    auto m = random_matrix(dim(rng), dim(rng), 0.3, rng);
    auto r = rank(m, CertMode::exact).rank;
    CHECK(rank(m.transposed(), CertMode::exact).rank == r);

    // random permutation of rows and columns
    std::vector<std::uint32_t> pr(m.rows()), pc(m.cols());
    for (std::uint32_t i = 0; i < m.rows(); ++i) pr[i] = i;
    for (std::uint32_t i = 0; i < m.cols(); ++i) pc[i] = i;
    std::shuffle(pr.begin(), pr.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    SparseRationalMatrix perm(m.rows(), m.cols());
    for (const auto& e : m.entries()) perm.add(pr[e.row], pc[e.col], e.value);
    CHECK(rank(perm, CertMode::exact).rank == r);
  }
}

TEST_CASE("exact rank witness minor is nonsingular and maximal") {
  std::mt19937_64 rng(23);
  auto m = random_matrix(12, 9, 0.4, rng);
  auto cert = rank(m, CertMode::exact);
  REQUIRE(cert.witness_cols.size() == cert.rank);
  REQUIRE(cert.witness_rows.size() == cert.rank);
  if (cert.rank == 0) return;

  auto cols = m.columns();
  auto submatrix = [&](const std::vector<std::uint32_t>& col_ids,
                       const std::vector<std::uint32_t>& row_ids) {
    SparseRationalMatrix s(std::uint32_t(row_ids.size()), std::uint32_t(col_ids.size()));
    for (std::uint32_t j = 0; j < col_ids.size(); ++j)
      for (const auto& [r, v] : cols[col_ids[j]])
        for (std::uint32_t i = 0; i < row_ids.size(); ++i)
          if (row_ids[i] == r) s.add(i, j, v);
    return s;
  };
  CHECK(rank(submatrix(cert.witness_cols, cert.witness_rows), CertMode::exact).rank ==
        cert.rank);

  // spot-check: no (r+1) x (r+1) extension is nonsingular
  std::vector<std::uint32_t> other_cols, other_rows;
  for (std::uint32_t c = 0; c < m.cols(); ++c)
    if (std::find(cert.witness_cols.begin(), cert.witness_cols.end(), c) ==
        cert.witness_cols.end())
      other_cols.push_back(c);
  for (std::uint32_t r = 0; r < m.rows(); ++r)
    if (std::find(cert.witness_rows.begin(), cert.witness_rows.end(), r) ==
        cert.witness_rows.end())
      other_rows.push_back(r);
  for (int t = 0; t < 10 && !other_cols.empty() && !other_rows.empty(); ++t) {
    auto ec = cert.witness_cols;
    auto er = cert.witness_rows;
    ec.push_back(other_cols[rng() % other_cols.size()]);
    er.push_back(other_rows[rng() % other_rows.size()]);
    CHECK(rank(submatrix(ec, er), CertMode::exact).rank == cert.rank);
  }
}

TEST_CASE("modular rank matches exact rank on random data") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 25; ++t) {
    auto m = random_matrix(10, 12, 0.35, rng);
    auto exact = rank(m, CertMode::exact);
    auto mod = rank(m, CertMode::modular);
    CHECK(mod.rank <= exact.rank);  // one-sided in general
    CHECK(mod.rank == exact.rank);  // and equal for generic small data
    CHECK(mod.primes.size() >= 2);
    for (auto p : mod.primes) CHECK(p > (1u << 30));
  }
}

TEST_CASE("membership with verified certificate") {
  std::mt19937_64 rng(31);
  auto m = random_matrix(10, 6, 0.5, rng);
  auto cols = m.columns();

  SUBCASE("first column belongs with coefficient e1") {
    if (cols[0].empty()) return;
    auto res = membership(cols[0], m, CertMode::exact);
    CHECK(res.member);
    REQUIRE(res.certificate.has_value());
    CHECK(m.apply_to_columns(*res.certificate) == cols[0]);
  }

  SUBCASE("random combinations belong and certificates verify") {
    for (int t = 0; t < 20; ++t) {
      SparseVec<Rat> combo;
      for (std::uint32_t j = 0; j < m.cols(); ++j)
        if (rng() % 2) combo.emplace_back(j, Rat(int(rng() % 7) - 3));
      auto v = m.apply_to_columns(combo);
      auto res = membership(v, m, CertMode::exact);
      CHECK(res.member);
      REQUIRE(res.certificate.has_value());
      CHECK(m.apply_to_columns(*res.certificate) == v);
    }
  }

  SUBCASE("non-member detected, both modes") {
    SparseRationalMatrix one(2, 1);
    one.add(0, 0, Rat(1));
    SparseVec<Rat> v{{1, Rat(1)}};
    CHECK_FALSE(membership(v, one, CertMode::exact).member);
    CHECK_FALSE(membership(v, one, CertMode::modular).member);
  }
}

TEST_CASE("quotient dimension") {
  SparseRationalMatrix e1(3, 1), e2(3, 1), e12(3, 1), empty(3, 0);
  e1.add(0, 0, Rat(1));
  e2.add(1, 0, Rat(1));
  e12.add(0, 0, Rat(1));
  e12.add(1, 0, Rat(1));
  CHECK(quotient_dim(e1, empty, CertMode::exact) == 1);
  CHECK(quotient_dim(e1, e1, CertMode::exact) == 0);
  CHECK(quotient_dim(e12, e2, CertMode::exact) == 1);
}

TEST_CASE("quotient_dim(V, R) == quotient_dim(V u R, R)") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 20; ++t) {
    auto v = random_matrix(8, 5, 0.4, rng);
    auto r = random_matrix(8, 4, 0.4, rng);
    SparseRationalMatrix vr(8, v.cols() + r.cols());
    for (const auto& e : v.entries()) vr.add(e.row, e.col, e.value);
    for (const auto& e : r.entries()) vr.add(e.row, v.cols() + e.col, e.value);
    CHECK(quotient_dim(v, r, CertMode::exact) == quotient_dim(vr, r, CertMode::exact));
  }
}

TEST_CASE("kernel bases") {
  CHECK(kernel_basis(identity(4)).empty());

  SparseRationalMatrix m(1, 2);
  m.add(0, 0, Rat(1));
  m.add(0, 1, Rat(1));
  auto basis = kernel_basis(m);
  REQUIRE(basis.size() == 1);
  REQUIRE(basis[0].size() == 2);
  // spans the line through (1, -1)
  CHECK(basis[0][0].second * Rat(-1) == basis[0][1].second);

  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    auto r = random_matrix(7, 9, 0.4, rng);
    auto k = kernel_basis(r);
    CHECK(k.size() == r.cols() - rank(r, CertMode::exact).rank);
  }
}

TEST_CASE("triplet serialization round trip") {
  std::mt19937_64 rng(43);
  auto m = random_matrix(6, 8, 0.4, rng);
  auto text = to_triplet_text(m);
  auto back = from_triplet_text(text);
  CHECK(back == m);

  std::string path = "triplet_roundtrip_test.v1.triplets";
  write_triplets(m, path);
  auto loaded = read_triplets(path);
  REQUIRE(loaded.has_value());
  CHECK(*loaded == m);
  std::remove(path.c_str());

  // corrupt cache reads as nullopt, not a crash
  std::ofstream bad(path);
  bad << "3 3 1\n0 0 not-a-number\n";
  bad.close();
  CHECK_FALSE(read_triplets(path).has_value());
  std::remove(path.c_str());
}

TEST_CASE("verification primes") {
  auto p0 = verification_prime(0, 1);
  CHECK(p0 > (1u << 30));
  CHECK(is_prime_u64(p0));
  CHECK(verification_prime(1, 1) > p0);
  for (int k = 0; k < 3; ++k) {
    auto p = verification_prime(k, 3);
    CHECK(p % 3 == 1);
    CHECK(is_prime_u64(p));
    FieldFp f(p);
    auto z = root_of_unity(f, 3);
    CHECK(z != 1);
    CHECK(f.pow(z, 3) == 1);
  }
}

TEST_CASE("Fp Shoup multiplication agrees with plain mulmod") {
  FieldFp f(verification_prime(0, 4));
  std::mt19937_64 rng(47);
  for (int t = 0; t < 2000; ++t) {
    std::uint64_t a = rng() % f.p, b = rng() % f.p;
    CHECK(f.mul_shoup(a, f.shoup_quotient(a), b) == f.mul(a, b));
  }
}
