#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "homlab/group_ring.hpp"

using namespace homlab;

namespace {

GroupRingElement random_element(const LatticeParams& p, std::mt19937_64& rng) {
  GroupRingElement e(p);
  std::uniform_int_distribution<std::uint32_t> idx(0, std::uint32_t(p.count - 1));
  std::uniform_int_distribution<int> val(-3, 3);
  for (int t = 0; t < 5; ++t) e.add_term(idx(rng), Rat(val(rng)));
  return e;
}

ZlVector random_vector(const LatticeParams& p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, std::uint32_t(p.count - 1));
  return ZlVector::from_index(p, d(rng));
}

}  // namespace

TEST_CASE("augmentation") {
  auto p = LatticeParams::make(2, 2);
  CHECK(augmentation(GroupRingElement::theta(p)) == Rat(16));
  CHECK(augmentation(GroupRingElement::basis(p, ZlVector::basis_a(p, 1))) == Rat(1));
  auto img = psi_image(ZlVector::zero(p), ZlVector::basis_a(p, 0), ZlVector::basis_a(p, 1));
  CHECK(augmentation(img) == Rat(0));
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(5);
  for (auto [g, L] : {std::pair{1, 3}, {2, 2}}) {
    auto p = LatticeParams::make(g, L);
    for (int t = 0; t < 50; ++t) {
      auto a = random_element(p, rng), b = random_element(p, rng), c = random_element(p, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(augmentation(a * b) == augmentation(a) * augmentation(b));
    }
    // group elements are units
    for (int t = 0; t < 20; ++t) {
      auto v = random_vector(p, rng);
      auto prod = GroupRingElement::basis(p, v) * GroupRingElement::basis(p, -v);
      CHECK(prod == GroupRingElement::basis(p, ZlVector::zero(p)));
    }
  }
}

TEST_CASE("theta is invariant and absorbs") {
  std::mt19937_64 rng(13);
  auto p = LatticeParams::make(1, 4);
  auto theta = GroupRingElement::theta(p);
  for (int t = 0; t < 30; ++t) {
    auto v = random_vector(p, rng);
    CHECK(theta.translated(v) == theta);
    auto e = random_element(p, rng);
    CHECK(theta * e == theta.scaled(augmentation(e)));
  }
}

TEST_CASE("decompose splits Q[H] as Q theta + I(H)") {
  auto p = LatticeParams::make(2, 2);
  auto theta = GroupRingElement::theta(p);

  auto d = decompose(theta);
  CHECK(d.trivial == theta);
  CHECK(d.ideal.is_zero());

  auto rho0 = GroupRingElement::basis(p, ZlVector::zero(p));
  auto d0 = decompose(rho0);
  CHECK(d0.trivial == theta.scaled(Rat(1, 16)));
  CHECK(d0.ideal == rho0 - theta.scaled(Rat(1, 16)));
  CHECK(augmentation(d0.ideal) == Rat(0));

  auto v = ZlVector::basis_a(p, 0), w = ZlVector::basis_b(p, 1);
  auto diff = GroupRingElement::basis(p, v) - GroupRingElement::basis(p, w);
  auto dd = decompose(diff);
  CHECK(dd.trivial.is_zero());
  CHECK(dd.ideal == diff);

  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    auto e = random_element(p, rng);
    auto de = decompose(e);
    CHECK(de.trivial + de.ideal == e);
    CHECK(augmentation(de.ideal) == Rat(0));
    auto again = decompose(de.ideal);
    CHECK(again.trivial.is_zero());
    CHECK(again.ideal == de.ideal);
  }
}

TEST_CASE("psi image formula") {
  auto p = LatticeParams::make(2, 2);
  auto a1 = ZlVector::basis_a(p, 0), a2 = ZlVector::basis_a(p, 1);
  auto zero = ZlVector::zero(p);

  auto img = psi_image(zero, a1, a2);
  GroupRingElement expect(p);
  expect.add_term(zero.index(), Rat(1));
  expect.add_term(a1.index(), Rat(-1));
  expect.add_term(a2.index(), Rat(-1));
  expect.add_term((a1 + a2).index(), Rat(1));
  CHECK(img == expect);

  std::mt19937_64 rng(19);
  for (int t = 0; t < 30; ++t) {
    auto v = random_vector(p, rng);
    CHECK(psi_image(v, a1, a2) == psi_image(v, a2, a1));
  }

  GroupRingElement total(p);
  for (std::uint32_t i = 0; i < p.count; ++i)
    total = total + psi_image(ZlVector::from_index(p, i), a1, a2);
  CHECK(total.is_zero());

  CHECK_THROWS_AS(psi_image(zero, a1, ZlVector::basis_b(p, 0)), InputError);
  CHECK_THROWS_AS(psi_image(zero, a1, a1), InputError);
}

TEST_CASE("boundary formulas") {
  auto p = LatticeParams::make(2, 2);
  auto zero = ZlVector::zero(p);
  auto a1 = ZlVector::basis_a(p, 0), b1 = ZlVector::basis_b(p, 0);
  auto a2 = ZlVector::basis_a(p, 1), b2 = ZlVector::basis_b(p, 1);

  SUBCASE("T2 instance") {
    auto img = boundary_T2(zero, a1, b2);
    GroupRingElement expect(p);
    expect.add_term(zero.index(), Rat(1));
    expect.add_term(a1.index(), Rat(-1));
    expect.add_term(b2.index(), Rat(-1));
    expect.add_term((a1 + b2).index(), Rat(1));
    CHECK(img == expect);
    CHECK(augmentation(img) == Rat(0));
    // at L = 2 consecutive translates cancel pairwise
    for (std::uint32_t f = 0; f < p.count; ++f) {
      auto fv = ZlVector::from_index(p, f);
      CHECK((boundary_T2(fv, a1, b2) + boundary_T2(fv + a1, a1, b2)).is_zero());
    }
  }

  SUBCASE("T3 instance at L = 2") {
    auto img = boundary_T3(zero, a1, a2, b1);
    GroupRingElement expect(p);
    expect.add_term(a2.index(), Rat(1));
    expect.add_term((a2 + b1).index(), Rat(-1));
    expect.add_term((a1 + a2).index(), Rat(1));
    expect.add_term((a1 + a2 + b1).index(), Rat(-1));
    CHECK(img == expect);
    CHECK(augmentation(img) == Rat(0));
  }

  SUBCASE("T3 is invariant under f -> f + x") {
    std::mt19937_64 rng(23);
    for (auto [g, L] : {std::pair{2, 2}, {2, 3}}) {
      auto q = LatticeParams::make(g, L);
      for (int t = 0; t < 40; ++t) {
        auto f = random_vector(q, rng), x = random_vector(q, rng);
        auto y = random_vector(q, rng), z = random_vector(q, rng);
        CHECK(boundary_T3(f + x, x, y, z) == boundary_T3(f, x, y, z));
        CHECK(augmentation(boundary_T3(f, x, y, z)) == Rat(0));
      }
    }
  }
}

TEST_CASE("case 3 cancellation") {
  // exhaustive at (1,2)
  auto p = LatticeParams::make(1, 2);
  for (std::uint32_t f = 0; f < p.count; ++f)
    for (std::uint32_t y = 0; y < p.count; ++y)
      for (std::uint32_t z = 0; z < p.count; ++z)
        CHECK(verify_case3_cancellation(ZlVector::from_index(p, f),
                                        ZlVector::from_index(p, y),
                                        ZlVector::from_index(p, z)));

  auto p22 = LatticeParams::make(2, 2);
  CHECK(verify_case3_cancellation(ZlVector::zero(p22), ZlVector::basis_a(p22, 0),
                                  ZlVector::basis_a(p22, 1)));

  std::mt19937_64 rng(29);
  for (auto [g, L] : {std::pair{2, 3}, {3, 2}}) {
    auto q = LatticeParams::make(g, L);
    for (int t = 0; t < 1000; ++t)
      CHECK(verify_case3_cancellation(random_vector(q, rng), random_vector(q, rng),
                                      random_vector(q, rng)));
  }
}

TEST_CASE("cache text round trip") {
  std::mt19937_64 rng(37);
  auto p = LatticeParams::make(2, 3);
  for (int t = 0; t < 20; ++t) {
    auto e = random_element(p, rng);
    CHECK(group_ring_from_cache_text(to_cache_text(e)) == e);
  }
  CHECK_THROWS_AS(group_ring_from_cache_text("2 3 1\n0 nope 1\n"), InputError);
}

TEST_CASE("case 4 telescoping") {
  auto p = LatticeParams::make(1, 2);
  for (std::uint32_t f = 0; f < p.count; ++f)
    for (std::uint32_t x = 0; x < p.count; ++x)
      for (std::uint32_t y = 0; y < p.count; ++y)
        for (std::uint32_t z = 0; z < p.count; ++z)
          CHECK(verify_case4_telescoping(
              ZlVector::from_index(p, f), ZlVector::from_index(p, x),
              ZlVector::from_index(p, y), ZlVector::from_index(p, z)));

  auto p22 = LatticeParams::make(2, 2);
  CHECK(verify_case4_telescoping(ZlVector::zero(p22), ZlVector::basis_a(p22, 0),
                                 ZlVector::basis_a(p22, 1), ZlVector::basis_b(p22, 1)));

  std::mt19937_64 rng(31);
  auto q = LatticeParams::make(2, 3);
  for (int t = 0; t < 1000; ++t)
    CHECK(verify_case4_telescoping(random_vector(q, rng), random_vector(q, rng),
                                   random_vector(q, rng), random_vector(q, rng)));
}
