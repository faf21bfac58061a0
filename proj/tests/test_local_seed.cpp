#include "support.hpp"

using namespace testing;
using ppv::Family;
using ppv::RootDatum;
using ppv::RootId;

namespace {

constexpr Family kFamilies[] = {Family::PlusConst, Family::MinusConst, Family::PlusT,
                                Family::MinusTinv};

RS to_rs(const Series &s) { return s.map_coeffs([](const Coeff &c) { return to_rf(c); }); }

/// (row, col) of the nonzero entry of X_root when it has exactly one.
std::pair<std::size_t, std::size_t> single_entry(const RootDatum &rd, const RootId &r) {
  const auto &X = rd.root(r).nilpotent;
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t j = 0; j < X.cols(); ++j)
      if (!X(i, j).is_zero())
        return {i, j};
  return {0, 0};
}

} // namespace

TEST_CASE("make_f at q = 0", "[local_seed]") {
  const Series f = ppv::make_f<Coeff>(Rat(0), 4);
  CHECK(f.t_min() == 1);
  CHECK(f.prec() == 4);
  CHECK(to_rf(f.coeff(1)) == rf_pole_power(Rat(0), 1));
  CHECK(to_rf(f.coeff(2)) == RF(Rat(-1, 2)) * rf_pole_power(Rat(0), 2));
  CHECK(to_rf(f.coeff(3)) == RF(Rat(1, 3)) * rf_pole_power(Rat(0), 3));
  CHECK_THROWS_AS(ppv::make_f<Coeff>(Rat(0), 1), ppv::InvalidInput);
}

TEST_CASE("derivatives of f match the shifted pole", "[local_seed]") {
  for (const Rat &q : pool()) {
    const int N = 10;
    const Series f = ppv::make_f<Coeff>(q, N);
    // d/dx f = 1/(x - q + t) - 1/(x - q)
    const Series dx = ppv::ts_dx(f);
    CHECK(dx.prec() == N);
    CHECK(to_rf(dx.coeff(0)) == RF(0L));
    for (int n = 1; n < N; ++n)
      CHECK(to_rf(dx.coeff(n)) == shifted_pole_coeff(q, Rat(1), n));
    // d/dt f = 1/(x - q + t)
    const Series dt = ppv::ts_dt(f);
    CHECK(dt.prec() == N - 1);
    for (int n = 0; n < N - 1; ++n)
      CHECK(to_rf(dt.coeff(n)) == shifted_pole_coeff(q, Rat(1), n));
  }
}

TEST_CASE("seed invariants", "[local_seed]") {
  const int N = 10;
  for (const std::string label : {"A1", "A2", "C2"}) {
    const auto rd = RootDatum::make(label);
    for (const auto &alpha : rd.positive_roots())
      for (Family fam : kFamilies) {
        const Rat q(1, 2);
        const auto s = ppv::make_seed(rd, alpha, fam, q, N);
        INFO(label << " " << ppv::root_name(alpha) << " " << ppv::to_string(fam));
        CHECK(s.root == ppv::family_root(fam, alpha));
        CHECK(ppv::mat_prec(s.Y_local) == N);
        CHECK(ppv::is_identity_mod_t(s.Y_local));
        CHECK(ppv::zero_mod(ppv::determinant(s.Y_local) - Series(1L), N));
        CHECK(ppv::mat_zero_mod(ppv::mat_dx(s.Y_local) - s.A_local * s.Y_local, N));
        CHECK(ppv::mat_agrees(s.A_local, ppv::mat_dx(s.Y_local) * ppv::mat_inv(s.Y_local)));
        const ppv::PointSet just_q({q});
        for (const auto &e : s.Y_local.data())
          CHECK(ppv::in_F0_ring(e, just_q));
        CHECK(ppv::zero_mod(ppv::mat_trace(s.A_local), N));
      }
  }
  const auto rd = RootDatum::make("A2");
  CHECK_THROWS_AS(ppv::make_seed(rd, RootId{-1, 1, 0}, Family::PlusT, Rat(0), N), ppv::InvalidInput);
  CHECK_THROWS_AS(ppv::make_seed(rd, RootId{1, 1}, Family::PlusT, Rat(0), N), ppv::InvalidInput);
}

TEST_CASE("MinusTinv argument is I mod t and carries the 1/t term", "[local_seed]") {
  const Rat q(-2);
  const int N = 8;
  const auto rd = RootDatum::make("A1");
  const auto s = ppv::make_seed(rd, RootId{1, -1}, Family::MinusTinv, q, N);
  // c = t^{-1} f - 1/(x - q) = sum_{n>=1} (-1)^n t^n / ((n+1) (x - q)^{n+1})
  CHECK(s.c.t_min() == 1);
  CHECK(s.c.prec() == N);
  for (int n = 1; n < N; ++n)
    CHECK(to_rf(s.c.coeff(n)) == RF(Rat(n % 2 ? -1 : 1, n + 1)) * rf_pole_power(q, n + 1));
}

TEST_CASE("local coefficient matrices are rational with small x-degree", "[local_seed][reconstruct]") {
  const int N = 12;
  const Rat q(1);
  const auto rd = RootDatum::make("A1");
  const RootId alpha{1, -1};
  for (Family fam : kFamilies) {
    INFO(ppv::to_string(fam));
    const auto s = ppv::make_seed(rd, alpha, fam, q, N);
    const auto [i, j] = single_entry(rd, s.root);
    const Series a = s.A_local(i, j);
    if (fam == Family::MinusTinv) {
      CHECK_FALSE(ppv::reconstruct(a, 2, N).success);
      const auto r = ppv::reconstruct(a, 3, N);
      REQUIRE(r.success);
      // planted value t / ((x - q)^2 (x - q + t))
      const RF xq = RF::x() - RF(q);
      const RS den(0, {xq * xq * xq, xq * xq}, ppv::kExact);
      const RS lhs = to_rs(r.numerator) * den;
      const RS rhs = to_rs(r.denominator) * RS::t();
      CHECK(ppv::zero_mod(lhs - rhs, N));
    } else {
      const auto r = ppv::reconstruct(a, 2, N);
      REQUIRE(r.success);
      CHECK(r.d_x_den <= 2);
      const RS residual = to_rs(r.denominator) * to_rs(a) - to_rs(r.numerator);
      CHECK(ppv::zero_mod(residual, N));
    }
  }
}

TEST_CASE("local Galois action is translation by constants", "[local_seed][galois]") {
  const int N = 12;
  for (const std::string label : {"A1", "A2"}) {
    const auto rd = RootDatum::make(label);
    for (const auto &alpha : rd.positive_roots())
      for (Family fam : kFamilies) {
        INFO(label << " " << ppv::root_name(alpha) << " " << ppv::to_string(fam));
        const auto s = ppv::make_seed(rd, alpha, fam, Rat(3), N);
        CHECK(ppv::galois_action_check(rd, s));
        CHECK(ppv::galois_action_check(rd, s, RF(0L)));
        CHECK(ppv::galois_action_check(rd, s, RF(Rat(-5, 7))));
      }
  }
}

TEST_CASE("tampered seed fails the Galois check", "[local_seed][galois]") {
  const auto rd = RootDatum::make("A1");
  auto s = ppv::make_seed(rd, RootId{1, -1}, Family::PlusT, Rat(0), 8);
  s.Y_local(0, 1) = s.Y_local(0, 1) + Series(2, {Coeff(1L)}, ppv::kExact);
  CHECK_FALSE(ppv::galois_action_check(rd, s));
  // Declaring the wrong family is caught as well.
  auto w = ppv::make_seed(rd, RootId{1, -1}, Family::PlusConst, Rat(0), 8);
  w.family = Family::PlusT;
  CHECK_FALSE(ppv::galois_action_check(rd, w));
}

TEST_CASE("2x2 local model", "[local_seed][model]") {
  for (const Rat &q : pool()) {
    const auto rep = ppv::local_model_check(q, 10);
    CHECK(rep.solution);
    CHECK(rep.derivations_commute);
    CHECK(rep.det_one);
    CHECK(rep.pass());
    CHECK(ppv::local_model_check(ppv::local_model<Coeff>(q, 10), q, 10, RF(0L)).pass());
  }
  SECTION("a perturbed coefficient matrix is rejected") {
    auto m = ppv::local_model<Coeff>(Rat(0), 10);
    m.A_tilde(0, 1) = m.A_tilde(0, 1) + Series(Coeff::pole(Rat(0), 1), ppv::kExact);
    const auto rep = ppv::local_model_check(m, Rat(0), 10);
    CHECK_FALSE(rep.solution);
    CHECK_FALSE(rep.derivations_commute);
    CHECK(rep.det_one);
  }
  CHECK_THROWS_AS(ppv::local_model_check(Rat(0), 3), ppv::InvalidInput);
}

TEST_CASE("f is not rational", "[local_seed][model]") {
  for (const Rat &q : pool())
    CHECK(ppv::certify_nonrational(q));
  // A derivative of a rational function has zero residues everywhere.
  const RF g = rf_dx(RF(1L) / ((RF::x() - RF(1L)) * (RF::x() + RF(2L))));
  CHECK_FALSE(ppv::nonzero_residue_certificate(g, std::vector<Rat>{Rat(1), Rat(-2)}));
}

TEST_CASE("family names round-trip", "[local_seed]") {
  for (Family f : kFamilies)
    CHECK(ppv::family_from_string(ppv::to_string(f)) == f);
  CHECK_THROWS_AS(ppv::family_from_string("PlusTwo"), ppv::ParseError);
}
