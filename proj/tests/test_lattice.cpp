#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "homlab/lattice.hpp"

using namespace homlab;

namespace {

ZlVector random_vector(const LatticeParams& p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, std::uint32_t(p.count - 1));
  return ZlVector::from_index(p, d(rng));
}

// Independent unimodularity oracle: a set is a free direct summand of
// (Z/L)^{2g} iff for every prime q | L the coordinate matrix has full rank
// over F_q.  Plain Gaussian elimination mod q, no minors.
bool oracle_unimodular(const std::vector<ZlVector>& set) {
  if (set.empty()) return true;
  const LatticeParams& p = set.front().params();
  if (int(set.size()) > p.dims()) return false;
  int L = p.L;
  for (int q = 2; q <= L; ++q) {
    if (L % q != 0) continue;
    bool prime = true;
    for (int d = 2; d * d <= q; ++d)
      if (q % d == 0) prime = false;
    if (!prime) continue;
    std::vector<std::vector<int>> m;
    for (const auto& v : set) {
      std::vector<int> row(p.dims());
      for (int c = 0; c < p.dims(); ++c) row[c] = v.coord(c) % q;
      m.push_back(row);
    }
    int rank = 0;
    for (int col = 0; col < p.dims() && rank < int(m.size()); ++col) {
      int piv = -1;
      for (int r = rank; r < int(m.size()); ++r)
        if (m[r][col] % q != 0) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      std::swap(m[rank], m[piv]);
      for (int r = 0; r < int(m.size()); ++r) {
        if (r == rank || m[r][col] % q == 0) continue;
        // scale row r by the pivot value and subtract factor * pivot row
        int factor = m[r][col];
        for (int c = 0; c < p.dims(); ++c)
          m[r][c] = ((m[r][c] * m[rank][col] - m[rank][c] * factor) % q + q) % q;
      }
      ++rank;
    }
    if (rank < int(set.size())) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("params validation") {
  CHECK_THROWS_AS(LatticeParams::make(0, 2), ParamError);
  CHECK_THROWS_AS(LatticeParams::make(1, 1), ParamError);
  CHECK_THROWS_AS(LatticeParams::make(9, 12), ParamError);  // 12^18 overflows
  CHECK(LatticeParams::make(2, 3).count == 81);
}

TEST_CASE("tau") {
  CHECK(tau(2) == 2);
  CHECK(tau(12) == 6);
  CHECK(tau(7) == 2);
  CHECK(tau(1) == 1);
}

TEST_CASE("pairing normalization and frozen values") {
  auto p = LatticeParams::make(1, 5);
  auto a1 = ZlVector::basis_a(p, 0), b1 = ZlVector::basis_b(p, 0);
  CHECK(pairing(a1, b1) == 1);
  CHECK(pairing(b1, a1) == 4);  // L - 1

  auto p2 = LatticeParams::make(2, 3);
  auto x = ZlVector::basis_a(p2, 0) + ZlVector::basis_b(p2, 1);
  auto y = ZlVector::basis_b(p2, 0) + ZlVector::basis_a(p2, 1);
  CHECK(pairing(x, y) == 0);  // 1 + (-1)

  auto p3 = LatticeParams::make(1, 2);
  CHECK_THROWS_AS(pairing(a1, ZlVector::basis_a(p3, 0)), ParamError);
}

TEST_CASE("pairing is antisymmetric and bilinear") {
  std::mt19937_64 rng(7);
  for (auto [g, L] : {std::pair{1, 4}, {2, 2}, {2, 3}, {3, 2}}) {
    auto p = LatticeParams::make(g, L);
    for (int t = 0; t < 200; ++t) {
      auto x = random_vector(p, rng), y = random_vector(p, rng), z = random_vector(p, rng);
      CHECK((pairing(x, y) + pairing(y, x)) % L == 0);
      CHECK(pairing(x + y, z) == (pairing(x, z) + pairing(y, z)) % L);
      CHECK((x + y) - y == x);
    }
  }
}

TEST_CASE("isotropy") {
  auto p = LatticeParams::make(2, 3);
  auto a1 = ZlVector::basis_a(p, 0), b1 = ZlVector::basis_b(p, 0);
  auto a2 = ZlVector::basis_a(p, 1);
  CHECK(is_isotropic({a1, a2}));
  CHECK_FALSE(is_isotropic({a1, b1}));
  CHECK(is_isotropic({a1}));
  CHECK(is_isotropic({}));
}

TEST_CASE("unimodularity frozen examples") {
  auto p14 = LatticeParams::make(1, 4);
  CHECK(is_unimodular({ZlVector::basis_a(p14, 0)}));
  CHECK_FALSE(is_unimodular({ZlVector::basis_a(p14, 0).scaled(2)}));

  auto p22 = LatticeParams::make(2, 2);
  auto v = ZlVector::basis_a(p22, 0) + ZlVector::basis_b(p22, 0);
  CHECK(is_unimodular({v, ZlVector::basis_a(p22, 1)}));

  CHECK_THROWS_AS(is_unimodular({v, v}), InputError);
  // more vectors than the rank of the lattice
  auto p12 = LatticeParams::make(1, 2);
  auto a = ZlVector::basis_a(p12, 0), b = ZlVector::basis_b(p12, 0);
  CHECK_FALSE(is_unimodular({a, b, a + b}));
}

TEST_CASE("unimodularity agrees with the per-prime rank oracle") {
  std::mt19937_64 rng(11);
  for (auto [g, L] : {std::pair{1, 4}, {1, 6}, {2, 2}, {2, 3}, {2, 4}}) {
    auto p = LatticeParams::make(g, L);
    // exhaustive singletons
    for (std::uint32_t i = 1; i < p.count; ++i) {
      ZlVector v = ZlVector::from_index(p, i);
      CHECK(is_unimodular({v}) == oracle_unimodular({v}));
    }
    // random pairs and triples
    for (int t = 0; t < 300; ++t) {
      auto v1 = random_vector(p, rng), v2 = random_vector(p, rng), v3 = random_vector(p, rng);
      if (v1 == v2 || v1 == v3 || v2 == v3) continue;
      CHECK(is_unimodular({v1, v2}) == oracle_unimodular({v1, v2}));
      if (p.dims() >= 3)
        CHECK(is_unimodular({v1, v2, v3}) == oracle_unimodular({v1, v2, v3}));
    }
  }
}

TEST_CASE("content") {
  auto p = LatticeParams::make(1, 6);
  CHECK(content(ZlVector::zero(p)) == 6);
  auto v = ZlVector::basis_a(p, 0).scaled(2) + ZlVector::basis_b(p, 0).scaled(4);
  CHECK(content(v) == 2);
  CHECK(content(ZlVector::basis_a(p, 0)) == 1);
}

TEST_CASE("content 1 iff unimodular singleton") {
  for (auto [g, L] : {std::pair{1, 4}, {1, 6}, {2, 2}, {2, 3}}) {
    auto p = LatticeParams::make(g, L);
    for (std::uint32_t i = 1; i < p.count; ++i) {
      ZlVector v = ZlVector::from_index(p, i);
      CHECK((content(v) == 1) == is_unimodular({v}));
    }
  }
}

TEST_CASE("vector enumeration order") {
  auto p = LatticeParams::make(1, 2);
  auto all = enumerate_vectors(p);
  REQUIRE(all.size() == 4);
  CHECK((ZlVector::basis_a(p, 0) + ZlVector::basis_b(p, 0)).index() == 3);
  for (std::uint32_t i = 0; i < all.size(); ++i) CHECK(all[i].index() == i);

  CHECK(enumerate_vectors(LatticeParams::make(2, 2)).size() == 16);
  CHECK(enumerate_vectors(LatticeParams::make(2, 3)).size() == 81);
  CHECK_THROWS_AS(enumerate_vectors(LatticeParams::make(2, 3), 80), BudgetError);
}

TEST_CASE("isotropic unimodular pairs") {
  for (int L : {2, 3, 4})
    CHECK(enumerate_iso_uni_pairs(LatticeParams::make(1, L)).empty());

  auto pairs = enumerate_iso_uni_pairs(LatticeParams::make(2, 2));
  CHECK(pairs.size() == 90);
  for (const auto& [w1, w2] : pairs) {
    CHECK(is_isotropic({w1, w2}));
    CHECK(is_unimodular({w1, w2}));
  }
}

TEST_CASE("transvections preserve the pairing") {
  std::mt19937_64 rng(3);
  for (auto [g, L] : {std::pair{1, 6}, {2, 3}}) {
    auto p = LatticeParams::make(g, L);
    auto gens = all_transvections(p);
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    for (int t = 0; t < 300; ++t) {
      auto x = random_vector(p, rng), y = random_vector(p, rng);
      const auto& tv = gens[pick(rng)];
      CHECK(pairing(tv.apply(x), tv.apply(y)) == pairing(x, y));
    }
  }
}

TEST_CASE("orbit counts equal tau") {
  for (int L : {2, 3, 4, 5, 6})
    CHECK(sp_orbit_count_bfs(LatticeParams::make(1, L)) == tau(L));
  CHECK(sp_orbit_count_bfs(LatticeParams::make(2, 2)) == 2);
  CHECK(sp_orbit_count_bfs(LatticeParams::make(2, 3)) == 2);
}

TEST_CASE("orbits coincide with content classes") {
  for (int L : {2, 3, 4, 5, 6}) {
    auto p = LatticeParams::make(1, L);
    auto label = sp_orbit_labels(p);
    for (std::uint32_t i = 0; i < p.count; ++i)
      for (std::uint32_t j = 0; j < p.count; ++j) {
        bool same_orbit = label[i] == label[j];
        bool same_content =
            content(ZlVector::from_index(p, i)) == content(ZlVector::from_index(p, j));
        CHECK(same_orbit == same_content);
      }
  }
}
