#include "support.hpp"

using namespace testing;
using ppv::DivByZero;
using ppv::ParseError;

namespace {

RF X() { return RF::x(); }
RF c(long v) { return RF(v); }
RF c(const Rat &r) { return RF(r); }

} // namespace

TEST_CASE("Rat canonical form and parsing", "[exact][rat]") {
  CHECK(Rat(6, -4) == Rat(-3, 2));
  CHECK(Rat(6, -4).str() == "-3/2");
  CHECK(Rat(0, 7).str() == "0/1");
  CHECK(Rat::parse("10/4") == Rat(5, 2));
  CHECK(Rat::parse("-7") == Rat(-7));
  CHECK(Rat::parse("3/9").str() == "1/3");
  CHECK_THROWS_AS(Rat::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rat::parse("abc"), ParseError);
  CHECK_THROWS_AS(Rat::parse("1.5"), ParseError);
  CHECK_THROWS_AS(Rat(1) / Rat(0), DivByZero);
  CHECK_THROWS_AS(Rat(0).inverse(), DivByZero);
  CHECK(Rat(2, 3).pow(3) == Rat(8, 27));
  CHECK(Rat(-2).pow(0) == Rat(1));
}

TEST_CASE("rational function arithmetic examples", "[exact][ratfunc]") {
  SECTION("1/(x-1) + 1/(x+1) = 2x/(x^2-1)") {
    const RF s = c(1) / (X() - c(1)) + c(1) / (X() + c(1));
    CHECK(s.num() == Poly<Rat>(std::vector<Rat>{0, 2}));
    CHECK(s.den() == Poly<Rat>(std::vector<Rat>{-1, 0, 1}));
  }
  SECTION("f * f^-1 = 1") {
    const RF f = (c(3) * X() * X() + c(1)) / (X() - c(2));
    CHECK(f * f.inverse() == c(1));
    CHECK(f / f == c(1));
  }
  SECTION("gcd cancellation") {
    const RF f = (X() * X() - c(1)) / (X() - c(1));
    CHECK(f == X() + c(1));
    CHECK(f.is_polynomial());
  }
  SECTION("denominator is monic") {
    const RF f = c(1) / (c(2) * X() + c(4));
    CHECK(f.den().is_monic());
    CHECK(f.num() == Poly<Rat>(Rat(1, 2)));
  }
  SECTION("division by zero") {
    CHECK_THROWS_AS(c(1) / c(0), DivByZero);
    CHECK_THROWS_AS(RF(Poly<Rat>(Rat(1)), Poly<Rat>()), DivByZero);
  }
}

TEST_CASE("rf_dx examples", "[exact][ratfunc]") {
  const Rat q(5, 2);
  CHECK(rf_dx(c(1) / (X() - c(q))) == -(c(1) / ((X() - c(q)) * (X() - c(q)))));
  CHECK(rf_dx(c(Rat(7, 3))).is_zero());
  // quotient rule by hand: (x^3/(x+1))' = (2x^3 + 3x^2)/(x+1)^2
  const RF f = X() * X() * X() / (X() + c(1));
  const RF expected = (c(2) * X() * X() * X() + c(3) * X() * X()) / ((X() + c(1)) * (X() + c(1)));
  CHECK(rf_dx(f) == expected);
}

TEST_CASE("partial_fractions examples", "[exact][ratfunc]") {
  const Rat q1(1), q2(-3);
  SECTION("two simple poles") {
    const RF a = c(1) / ((X() - c(q1)) * (X() - c(q2)));
    const auto pf = partial_fractions(a, std::vector<Rat>{q1, q2});
    REQUIRE(pf.parts.size() == 2);
    CHECK(pf.parts[0].coeffs == std::vector<Rat>{Rat(1) / (q1 - q2)});
    CHECK(pf.parts[1].coeffs == std::vector<Rat>{Rat(1) / (q2 - q1)});
    CHECK(pf.rest.is_zero());
  }
  SECTION("double pole") {
    const auto pf = partial_fractions(rf_pole_power(q1, 2), std::vector<Rat>{q1});
    CHECK(pf.parts[0].coeffs == std::vector<Rat>{Rat(0), Rat(1)});
    CHECK(pf.rest.is_zero());
  }
  SECTION("polynomial part goes to rest") {
    const RF a = (X() * X() + c(1)) / (X() - c(q2));
    const auto pf = partial_fractions(a, std::vector<Rat>{q2});
    CHECK(pf.parts[0].coeffs == std::vector<Rat>{q2 * q2 + Rat(1)});
    CHECK(pf.rest == X() + c(q2));
  }
  SECTION("poles outside the list stay in rest") {
    const RF a = c(1) / (X() - c(q1)) + c(1) / (X() - c(7));
    const auto pf = partial_fractions(a, std::vector<Rat>{q1});
    CHECK(pf.rest == c(1) / (X() - c(7)));
  }
}

TEST_CASE("residue, expand_at and pole_free_at examples", "[exact][ratfunc]") {
  const Rat q(2), p(-1, 3);
  CHECK(residue(c(1) / (X() - c(q)), q) == Rat(1));
  CHECK(residue(rf_pole_power(q, 2), q) == Rat(0));
  CHECK(residue(c(1) / ((X() - c(q)) * (X() - c(p))), q) == Rat(1) / (q - p));

  const auto l = expand_at(c(1) / (X() - c(p)), q, 2);
  CHECK(l.low == 0);
  const Rat d = q - p;
  CHECK(l.coeffs == std::vector<Rat>{d.inverse(), -(d.inverse().pow(2)), d.inverse().pow(3)});
  const auto l2 = expand_at(c(1) / (X() - c(q)), q, -1);
  CHECK(l2.low == -1);
  CHECK(l2.coeffs == std::vector<Rat>{Rat(1)});
  const auto l3 = expand_at(X(), q, 1);
  CHECK(l3.coeffs == std::vector<Rat>{q, Rat(1)});

  CHECK_FALSE(pole_free_at(c(1) / (X() - c(q)), q));
  CHECK(pole_free_at(c(1) / (X() - c(p)), q));
  CHECK(pole_free_at((X() - c(q)) / (X() - c(q)), q));
}

TEST_CASE("field axioms on random triples", "[exact][ratfunc][property]") {
  auto g = rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const RF a = random_ratfunc(g, 2), b = random_ratfunc(g, 2), d = random_ratfunc(g, 2);
    REQUIRE((a + b) + d == a + (b + d));
    REQUIRE(a * (b + d) == a * b + a * d);
    REQUIRE((a * b) * d == a * (b * d));
    REQUIRE(a - a == c(0));
    if (!a.is_zero())
      REQUIRE(a * a.inverse() == c(1));
  }
}

TEST_CASE("Rat field axioms on random triples", "[exact][rat][property]") {
  auto g = rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const Rat a = random_rat(g, 50, 40), b = random_rat(g, 50, 40), d = random_rat(g, 50, 40);
    REQUIRE((a + b) + d == a + (b + d));
    REQUIRE(a * (b + d) == a * b + a * d);
    REQUIRE(Rat::parse(a.str()) == a);
  }
}

TEST_CASE("Leibniz rule for rf_dx", "[exact][ratfunc][property]") {
  auto g = rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const RF a = random_ratfunc(g), b = random_ratfunc(g);
    REQUIRE(rf_dx(a * b) == rf_dx(a) * b + a * rf_dx(b));
  }
}

TEST_CASE("partial fractions reassemble and residues agree with expansions",
          "[exact][ratfunc][property]") {
  auto g = rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    // Denominator built from pool points so that the poles are known.
    RF den(1L);
    const long k = uniform(g, 0, 3);
    for (long i = 0; i < k; ++i)
      den = den * (X() - c(pool()[static_cast<std::size_t>(uniform(g, 0, 4))]));
    const RF a = RF(random_poly(g, 4)) / den;
    const auto pf = partial_fractions(a, pool());
    RF sum = pf.rest;
    for (const auto &pp : pf.parts)
      sum = sum + pp.as_ratfunc();
    REQUIRE(sum == a);
    for (const Rat &q : pool()) {
      REQUIRE(pole_free_at(pf.rest, q));
      REQUIRE(residue(a, q) == expand_at(a, q, 0).at(-1));
      // Recombined truncation differs from a by O((x-q)^{order+1}).
      const long order = 3;
      const auto l = expand_at(a, q, order);
      RF trunc(0L);
      for (long j = l.low; j <= order; ++j) {
        const RF power = j < 0 ? rf_pole_power(q, static_cast<int>(-j))
                               : RF(Poly<Rat>::linear_power(q, static_cast<std::size_t>(j)));
        trunc = trunc + RF(l.at(j)) * power;
      }
      const auto diff = expand_at(a - trunc, q, order);
      for (long j = diff.low; j <= order; ++j)
        REQUIRE(diff.at(j).is_zero());
    }
  }
}
