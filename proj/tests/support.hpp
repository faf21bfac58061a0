#pragma once

// Seeded generators and independent oracles shared by the unit tests.

#include <cstdint>
#include <random>
#include <vector>

#include "catch_amalgamated.hpp"

#include "ppv.hpp"

namespace testing {

using ppv::Coeff;
using ppv::PartialFrac;
using ppv::Poly;
using ppv::Rat;
using ppv::RatFunc;
using ppv::Series;
using ppv::SeriesMatrix;
using ppv::TSeries;

using RF = RatFunc<Rat>;
using RS = TSeries<RF>;

/// One engine per test case, seeded from --rng-seed plus a salt so that
/// test cases do not share streams.
inline std::mt19937_64 rng(std::uint64_t salt) {
  return std::mt19937_64(static_cast<std::uint64_t>(Catch::rngSeed()) * 1000003ULL + salt);
}

inline long uniform(std::mt19937_64 &g, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(g);
}

inline Rat random_rat(std::mt19937_64 &g, long range = 9, long maxden = 5) {
  return Rat(uniform(g, -range, range), uniform(g, 1, maxden));
}

inline Rat random_nonzero_rat(std::mt19937_64 &g) {
  Rat r;
  do
    r = random_rat(g);
  while (r.is_zero());
  return r;
}

inline Poly<Rat> random_poly(std::mt19937_64 &g, long maxdeg) {
  std::vector<Rat> c;
  const long d = uniform(g, -1, maxdeg);
  for (long i = 0; i <= d; ++i)
    c.push_back(random_rat(g));
  return Poly<Rat>(std::move(c));
}

inline RF random_ratfunc(std::mt19937_64 &g, long maxdeg = 3) {
  Poly<Rat> den;
  do
    den = random_poly(g, maxdeg);
  while (den.is_zero());
  return RF(random_poly(g, maxdeg), den);
}

/// The small point pool used by the partial-fraction generators.
inline const std::vector<Rat> &pool() {
  static const std::vector<Rat> p = {Rat(0), Rat(1), Rat(-2), Rat(1, 2), Rat(7, 3)};
  return p;
}

/// Random element of Q[x] + sum over the pool of principal parts.
inline Coeff random_pf(std::mt19937_64 &g, long maxorder = 3, bool with_poly = true) {
  Coeff out = with_poly ? Coeff(random_poly(g, 2)) : Coeff(random_rat(g));
  const long npoles = uniform(g, 0, 2);
  for (long k = 0; k < npoles; ++k) {
    const Rat &q = pool()[static_cast<std::size_t>(uniform(g, 0, 4))];
    out += Coeff::pole(q, static_cast<std::size_t>(uniform(g, 1, maxorder)), random_rat(g));
  }
  return out;
}

inline Series random_series(std::mt19937_64 &g, bool exact_allowed = true) {
  const int t_min = static_cast<int>(uniform(g, -2, 2));
  const int len = static_cast<int>(uniform(g, 0, 5));
  std::vector<Coeff> c;
  for (int i = 0; i < len; ++i)
    c.push_back(random_pf(g));
  const bool exact = exact_allowed && uniform(g, 0, 3) == 0;
  const int prec = exact ? ppv::kExact : t_min + len + static_cast<int>(uniform(g, 0, 3));
  return Series(t_min, std::move(c), prec);
}

/// Random series that is a unit: nonzero constant leading coefficient.
inline Series random_unit_series(std::mt19937_64 &g, int prec) {
  std::vector<Coeff> c{Coeff(random_nonzero_rat(g))};
  for (int i = 1; i < prec; ++i)
    c.push_back(random_pf(g, 2, false));
  const int t_min = static_cast<int>(uniform(g, -2, 2));
  return Series(t_min, std::move(c), t_min + prec - static_cast<int>(uniform(g, 0, prec - 1)));
}

// ---------------------------------------------------------------------------
// Oracles computed with num/den arithmetic only.

/// 1/(x - q)^e as a canonical RatFunc, built by repeated multiplication.
inline RF rf_pole_power(const Rat &q, int e) {
  const RF base = RF(1L) / (RF::x() - RF(q));
  RF out(1L);
  for (int i = 0; i < e; ++i)
    out = out * base;
  return out;
}

/// t^n coefficient of 1/(x - q + c t): (-c)^n / (x - q)^{n+1}.
inline RF shifted_pole_coeff(const Rat &q, const Rat &c, int n) {
  return RF((-c).pow(n)) * rf_pole_power(q, n + 1);
}

inline RF to_rf(const Coeff &c) { return c.to_ratfunc(); }

} // namespace testing
