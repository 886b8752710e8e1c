#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "homlab/cover.hpp"
#include "homlab/fox.hpp"

using namespace homlab;

namespace {

FreeWord random_word(const LatticeParams& p, int max_len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, p.dims() - 1);
  std::vector<int> letters;
  int target = len(rng);
  while (int(letters.size()) < target) {
    int letter = (rng() % 2 ? 1 : -1) * (gen(rng) + 1);
    if (!letters.empty() && letters.back() == -letter) continue;
    letters.push_back(letter);
  }
  return FreeWord(p, std::move(letters));
}

GroupRingElement rho(const LatticeParams& p, const ZlVector& v) {
  return GroupRingElement::basis(p, v);
}

}  // namespace

TEST_CASE("word reduction, parsing, printing") {
  auto p = LatticeParams::make(2, 3);
  auto w = FreeWord::parse(p, "a1 B1 b1 A1 a2");
  CHECK(w.str() == "a2");
  CHECK(FreeWord::parse(p, w.str()) == w);
  CHECK(FreeWord::parse(p, "").empty());
  CHECK_THROWS_AS(FreeWord::parse(p, "c1"), InputError);
  CHECK_THROWS_AS(FreeWord::parse(p, "a3"), InputError);

  auto x = FreeWord::parse(p, "a1 b2");
  CHECK((x * x.inverse()).empty());
  CHECK(x.power(-2) == (x * x).inverse());
}

TEST_CASE("abelianization") {
  auto p = LatticeParams::make(1, 2);
  auto alpha = FreeWord::generator(p, 0), beta = FreeWord::generator(p, 1);
  CHECK(commutator(alpha, beta).abelianize().is_zero());
  CHECK(commutator(alpha, beta).length() == 4);

  auto sq = alpha * alpha;
  CHECK(sq.abelianize_int() == std::vector<long>{2, 0});
  CHECK(sq.abelianize().is_zero());

  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    auto u = random_word(p, 6, rng), v = random_word(p, 6, rng);
    CHECK((u * v).abelianize() == u.abelianize() + v.abelianize());
  }
}

TEST_CASE("fox derivative axioms and frozen values") {
  auto p = LatticeParams::make(1, 3);
  auto alpha = FreeWord::generator(p, 0), beta = FreeWord::generator(p, 1);
  auto a1 = ZlVector::basis_a(p, 0), b1 = ZlVector::basis_b(p, 0);

  CHECK(fox_derivative(alpha, 0) == rho(p, ZlVector::zero(p)));
  CHECK(fox_derivative(alpha, 1).is_zero());
  CHECK(fox_derivative(alpha.inverse(), 0) == -rho(p, -a1));
  CHECK(fox_derivative(commutator(alpha, beta), 0) == rho(p, -a1 - b1) - rho(p, -a1));
}

TEST_CASE("fox product rule") {
  std::mt19937_64 rng(5);
  for (auto [g, L] : {std::pair{1, 2}, {2, 3}}) {
    auto p = LatticeParams::make(g, L);
    for (int t = 0; t < 60; ++t) {
      auto u = random_word(p, 7, rng), v = random_word(p, 7, rng);
      for (int j = 0; j < p.dims(); ++j) {
        auto lhs = fox_derivative(u * v, j);
        auto rhs = fox_derivative(u, j) + fox_derivative(v, j).translated(u.abelianize());
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("fundamental fox identity: d1(chain(w)) = rho[w] - rho[0]") {
  std::mt19937_64 rng(7);
  for (auto [g, L] : {std::pair{1, 2}, {2, 2}, {2, 3}}) {
    auto p = LatticeParams::make(g, L);
    for (int t = 0; t < 100; ++t) {
      auto w = random_word(p, 8, rng);
      GroupRingElement acc(p);
      for (int j = 0; j < p.dims(); ++j) {
        auto d = fox_derivative(w, j);
        auto xj = ZlVector::basis(p, j);
        acc = acc + d.translated(xj) - d;
      }
      auto expect = rho(p, w.abelianize()) - rho(p, ZlVector::zero(p));
      CHECK(acc == expect);
    }
  }
}

TEST_CASE("cover complex chain condition and ranks") {
  for (auto [g, L] : {std::pair{1, 2}, {1, 3}, {2, 2}, {2, 3}}) {
    auto p = LatticeParams::make(g, L);
    auto c = CoverComplex::build(p, /*closed=*/true);
    CHECK(c.rank_d1() == p.count - 1);
    // d1 . d2 = 0, exactly
    for (const auto& col : c.d2().columns())
      CHECK(c.d1().apply_to_columns(col).empty());
    // the projection kills im d2
    for (const auto& col : c.d2().columns())
      CHECK(c.projection().apply_to_columns(col).empty());
  }
}

TEST_CASE("homology dimensions") {
  auto dims12c = h1_dims(CoverComplex::build(LatticeParams::make(1, 2), true));
  CHECK(dims12c.h1 == 2);
  CHECK(dims12c.c_dim == 0);
  CHECK(dims12c.i_dim == 3);

  auto dims12b = h1_dims(CoverComplex::build(LatticeParams::make(1, 2), false));
  CHECK(dims12b.h1 == 5);
  CHECK(dims12b.c_dim == 3);
  CHECK(dims12b.i_dim == 3);

  auto dims22c = h1_dims(CoverComplex::build(LatticeParams::make(2, 2), true));
  CHECK(dims22c.h1 == 34);
  CHECK(dims22c.c_dim == 30);

  auto dims22b = h1_dims(CoverComplex::build(LatticeParams::make(2, 2), false));
  CHECK(dims22b.h1 == 49);
  CHECK(dims22b.c_dim == 45);
  CHECK(dims22b.c_dim - dims22c.c_dim == dims22b.i_dim);
  CHECK(dims22b.i_dim == 15);
}

TEST_CASE("kernel of d2 is the theta line") {
  for (auto [g, L] : {std::pair{1, 2}, {2, 2}}) {
    auto p = LatticeParams::make(g, L);
    auto c = CoverComplex::build(p, true);
    auto kernel = kernel_basis(c.d2());
    REQUIRE(kernel.size() == 1);
    REQUIRE(kernel[0].size() == p.count);
    for (const auto& [i, v] : kernel[0]) CHECK(v == kernel[0].front().second);
  }
}

TEST_CASE("cycle classes") {
  auto p = LatticeParams::make(1, 2);
  auto bounded = CoverComplex::build(p, false);
  auto closed = CoverComplex::build(p, true);
  auto relator = FreeWord::relator(p);

  CHECK(bounded.cycle_class(relator) == bounded.kappa(ZlVector::zero(p)));
  CHECK_THROWS_AS(bounded.cycle_class(FreeWord::generator(p, 0)), InputError);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    auto w = random_word(p, 6, rng);
    auto conj = w * relator * w.inverse();
    CHECK(bounded.cycle_class(conj) ==
          bounded.cycle_class(bounded.translate_chain(bounded.chain_of(relator),
                                                      w.abelianize())));
  }

  // relator translates become boundaries upstairs
  CHECK(closed.cycle_class(relator).empty());

  // chdesc item 3 instance: [x^L, y^L] dies in the closed cover's H_1
  auto xL = FreeWord::generator(p, 0).power(p.L);
  auto yL = FreeWord::generator(p, 1).power(p.L);
  CHECK(closed.cycle_class(commutator(xL, yL)).empty());
  CHECK(bounded.cycle_class(commutator(xL, yL)).empty());
}

TEST_CASE("bracket classes") {
  auto p = LatticeParams::make(2, 2);
  auto cc = CoverComplex::build(p, false);
  std::mt19937_64 rng(13);

  SUBCASE("depend on the conjugator only through its mod-L class") {
    auto closed = CoverComplex::build(p, true);
    for (int t = 0; t < 40; ++t) {
      auto x = random_word(p, 5, rng), y = random_word(p, 5, rng);
      auto f = random_word(p, 5, rng);
      CHECK(cc.bracket_class(x, y, f) == cc.bracket_class_at(x, y, f.abelianize()));
      // multiplying the conjugator by a kernel word changes nothing, in
      // either cover
      auto k = FreeWord::generator(p, 0).power(p.L) *
               commutator(random_word(p, 3, rng), random_word(p, 3, rng));
      CHECK(cc.bracket_class(x, y, f * k) == cc.bracket_class(x, y, f));
      CHECK(closed.bracket_class(x, y, f * k) == closed.bracket_class(x, y, f));
      CHECK(closed.bracket_class(x, y, f * FreeWord::relator(p)) ==
            closed.bracket_class(x, y, f));
    }
  }

  SUBCASE("antisymmetry instance") {
    auto a = FreeWord::generator(p, 0), b = FreeWord::generator(p, 1);
    auto lhs = cc.cycle_class(commutator(a, b));
    auto rhs = cc.cycle_class(commutator(b, a));
    for (auto& [i, v] : rhs) v = -v;
    CHECK(lhs == rhs);
    CHECK_FALSE(lhs.empty());
  }

  SUBCASE("kernel square bracket vanishes") {
    auto x = FreeWord::generator(p, 0).power(2);
    auto y = FreeWord::generator(p, 1).power(2);
    CHECK(cc.cycle_class(commutator(x, y)).empty());
  }
}

TEST_CASE("commutator identity suite") {
  SUBCASE("exhaustive words of length <= 4 at (1,2), both covers") {
    for (bool closed : {false, true}) {
      auto reports = verify_commutator_identities(LatticeParams::make(1, 2), closed,
                                                  /*max_len=*/4, /*samples=*/0, 0);
      for (const auto& r : reports) {
        INFO(r.name, " witness ", r.first_witness);
        CHECK(r.passed());
      }
    }
  }
  SUBCASE("randomized at (2,2)") {
    auto reports = verify_commutator_identities(LatticeParams::make(2, 2), false, 4,
                                                /*samples=*/200, /*seed=*/42);
    for (const auto& r : reports) {
      INFO(r.name, " witness ", r.first_witness);
      CHECK(r.passed());
      CHECK(r.checked >= 200);
    }
  }
}

TEST_CASE("I structure") {
  auto r12 = verify_I_structure(LatticeParams::make(1, 2));
  CHECK(r12.i_dim == 3);
  CHECK(r12.passed());

  auto r13 = verify_I_structure(LatticeParams::make(1, 3));
  CHECK(r13.i_dim == 8);
  CHECK(r13.passed());

  auto r22 = verify_I_structure(LatticeParams::make(2, 2));
  CHECK(r22.i_dim == 15);
  CHECK(r22.passed());
}
