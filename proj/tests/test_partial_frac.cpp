#include "support.hpp"

using namespace testing;

TEST_CASE("partial fraction form examples", "[exact][pf]") {
  const Rat q(1), p(-2);
  const Coeff a = Coeff::pole(q, 1) + Coeff::pole(p, 1);
  CHECK(a.to_ratfunc() == RF(Poly<Rat>(std::vector<Rat>{1, 2})) / ((RF::x() - RF(q)) * (RF::x() - RF(p))));
  // 1/((x-1)(x+2)) = (1/3)/(x-1) - (1/3)/(x+2)
  const Coeff prod = Coeff::pole(q, 1) * Coeff::pole(p, 1);
  CHECK(prod.principal_part(q) == std::vector<Rat>{Rat(1, 3)});
  CHECK(prod.principal_part(p) == std::vector<Rat>{Rat(-1, 3)});
  CHECK(prod.poly().is_zero());
  // x/(x-1) = 1 + 1/(x-1)
  const Coeff xq = Coeff::x() * Coeff::pole(q, 1);
  CHECK(xq.poly() == Poly<Rat>(Rat(1)));
  CHECK(xq.residue(q) == Rat(1));
  CHECK(Coeff::pole(q, 2).dx().principal_part(q) == std::vector<Rat>{0, 0, -2});
  CHECK(Coeff(Rat(3)).inverse() == Coeff(Rat(1, 3)));
  CHECK_THROWS_AS(Coeff::pole(q, 1).inverse(), ppv::NotRepresentable);
  CHECK_THROWS_AS(Coeff().inverse(), ppv::DivByZero);
  CHECK(Coeff::pole(q, 2, Rat(0)).is_zero());
}

TEST_CASE("from_ratfunc rejects poles outside the points", "[exact][pf]") {
  const RF a = RF(1L) / (RF::x() - RF(5L));
  CHECK_THROWS_AS(Coeff::from_ratfunc(a, pool()), ppv::PoleOutsidePointSet);
  CHECK(Coeff::from_ratfunc(a, std::vector<Rat>{Rat(5)}) == Coeff::pole(Rat(5), 1));
}

TEST_CASE("partial fraction arithmetic agrees with num/den arithmetic",
          "[exact][pf][property]") {
  auto g = rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const Coeff a = random_pf(g), b = random_pf(g);
    const RF ra = to_rf(a), rb = to_rf(b);
    REQUIRE(to_rf(a + b) == ra + rb);
    REQUIRE(to_rf(a - b) == ra - rb);
    REQUIRE(to_rf(a * b) == ra * rb);
    REQUIRE(to_rf(a.dx()) == rf_dx(ra));
    REQUIRE(Coeff::from_ratfunc(ra, pool()) == a);
    for (const Rat &q : pool()) {
      REQUIRE(a.residue(q) == residue(ra, q));
      REQUIRE(a.pole_free_at(q) == pole_free_at(ra, q));
      const auto l1 = a.expand_at(q, 2), l2 = expand_at(ra, q, 2);
      for (long j = -4; j <= 2; ++j)
        REQUIRE(l1.at(j) == l2.at(j));
    }
  }
}

TEST_CASE("lift_field embeds coefficients", "[exact][pf][property]") {
  using L = RatFunc<Rat>;
  auto g = rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Coeff a = random_pf(g), b = random_pf(g);
    const auto la = ppv::lift_field<L>(a), lb = ppv::lift_field<L>(b);
    REQUIRE(ppv::lift_field<L>(a * b) == la * lb);
    REQUIRE(ppv::lift_field<L>(a + b) == la + lb);
    for (const Rat &q : pool())
      REQUIRE(la.residue(q) == L(a.residue(q)));
  }
}
