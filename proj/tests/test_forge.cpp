#include "support.hpp"

#include <algorithm>

using namespace testing;
using ppv::CheckStatus;
using ppv::EquationBundle;
using ppv::Family;
using ppv::RootDatum;

namespace {

const EquationBundle &a1_bundle() {
  static const EquationBundle b = ppv::build(RootDatum::make("A1"), 16);
  return b;
}

CheckStatus status_of(const ppv::VerificationReport &r, const std::string &name) {
  const auto *c = r.find(name);
  REQUIRE(c != nullptr);
  return c->status;
}

std::vector<ppv::LocalSeed<Coeff>> without_family(const std::vector<ppv::LocalSeed<Coeff>> &seeds,
                                                  Family fam) {
  std::vector<ppv::LocalSeed<Coeff>> out;
  std::copy_if(seeds.begin(), seeds.end(), std::back_inserter(out),
               [fam](const auto &s) { return s.family != fam; });
  return out;
}

} // namespace

TEST_CASE("A1 bundle passes every mandatory check", "[forge]") {
  const auto &b = a1_bundle();
  CHECK(b.ps.size() == 4);
  CHECK(b.report.overall());
  std::vector<std::string> names;
  for (const auto &c : b.report.checks) {
    names.push_back(c.name);
    if (c.mandatory)
      CHECK(c.status == CheckStatus::pass);
  }
  const std::vector<std::string> expected = {
      "bundle_shape",       "local_seeds",   "patch_factorization", "fundamental_identity",
      "A_in_F0_ring",       "reconstruction", "gauge_identity",     "det_Y_one",
      "trace_A_zero",       "galois_action", "generation_hypotheses", "local_model",
      "springer_identity"};
  CHECK(names == expected);
  CHECK_FALSE(b.report.find("reconstruction")->mandatory);
  CHECK(b.report == ppv::verify_bundle(b));
  CHECK(b.report.notes == ppv::standard_notes());
}

TEST_CASE("A1 bundle against independent recomputation", "[forge]") {
  const auto &b = a1_bundle();
  const int N = b.patch.achieved_order;
  CHECK(N == 16);
  CHECK(ppv::mat_zero_mod(ppv::mat_dx(b.patch.Y) - b.A * b.patch.Y, N));
  // A_i = Z_i^{-1} (A Z_i - d/dx Z_i) recovers every local equation.
  for (std::size_t i = 0; i < b.ps.size(); ++i) {
    const auto &Z = b.patch.Z[i];
    const auto Ai = ppv::mat_inv(Z) * (b.A * Z - ppv::mat_dx(Z));
    CHECK(ppv::mat_zero_mod(Ai - b.seeds[i].A_local, N));
    CHECK(ppv::gauge_check(b, i));
  }
  for (const auto &e : b.A.data()) {
    CHECK(ppv::in_F0_ring(e, b.ps));
    CHECK(e.t_min() >= 1);
  }
  // seeds follow the family/root layout
  CHECK(b.seeds[0].family == Family::PlusConst);
  CHECK(b.seeds[3].family == Family::MinusTinv);
  CHECK(b.seeds[3].root == ppv::RootId{-1, 1});
}

TEST_CASE("mutated bundles fail the right checks", "[forge]") {
  SECTION("Z_1 replaced by the identity") {
    auto b = a1_bundle();
    b.patch.Z[1] = ppv::mat_truncate(ppv::tmat_identity<Coeff>(2), 16);
    CHECK_FALSE(ppv::gauge_check(b, 1));
    CHECK(ppv::gauge_check(b, 0));
    const auto rep = ppv::verify_bundle(b);
    CHECK_FALSE(rep.overall());
    CHECK(status_of(rep, "gauge_identity") == CheckStatus::fail);
    CHECK(status_of(rep, "patch_factorization") == CheckStatus::fail);
    CHECK(rep.find("gauge_identity")->notes.find("1/1") != std::string::npos);
  }
  SECTION("one coefficient of A edited") {
    auto b = a1_bundle();
    b.A(0, 1) = b.A(0, 1) + Series(5, {Coeff::pole(Rat(2), 1)}, ppv::kExact);
    const auto rep = ppv::verify_bundle(b);
    CHECK_FALSE(rep.overall());
    CHECK(status_of(rep, "fundamental_identity") == CheckStatus::fail);
    CHECK(rep.find("fundamental_identity")->verified_order == 0);
    CHECK(status_of(rep, "gauge_identity") == CheckStatus::fail);
    CHECK(status_of(rep, "patch_factorization") == CheckStatus::pass);
  }
  SECTION("a seed swapped for another family") {
    auto b = a1_bundle();
    b.seeds[2] = ppv::make_seed(b.rd, ppv::RootId{1, -1}, Family::PlusConst, b.ps[2], 16);
    const auto rep = ppv::verify_bundle(b);
    CHECK(status_of(rep, "bundle_shape") == CheckStatus::fail);
    CHECK(rep.checks.size() == 1);
  }
  SECTION("a stored seed that disagrees with its description") {
    auto b = a1_bundle();
    b.seeds[0].c = b.seeds[0].c + Series(3, {Coeff(1L)}, ppv::kExact);
    CHECK(status_of(ppv::verify_bundle(b), "local_seeds") == CheckStatus::fail);
  }
  SECTION("a stored reconstruction certificate that does not verify") {
    auto b = a1_bundle();
    b.reconstructions[0].success = true;
    b.reconstructions[0].numerator = Series(1L);
    b.reconstructions[0].denominator = Series(1L);
    b.reconstructions[0].verified_order = 16;
    const auto rep = ppv::verify_bundle(b);
    CHECK(status_of(rep, "reconstruction") == CheckStatus::fail);
    CHECK(rep.overall());
  }
  SECTION("stored descriptors that differ from the verified ones") {
    auto b = a1_bundle();
    b.descriptors.pop_back();
    CHECK(status_of(ppv::verify_bundle(b), "generation_hypotheses") == CheckStatus::fail);
  }
}

TEST_CASE("generation check flips when a family is dropped", "[forge][propgen]") {
  const auto &b = a1_bundle();
  CHECK(ppv::galois_descriptor_check(b).status == CheckStatus::pass);
  for (Family fam : {Family::PlusConst, Family::MinusConst, Family::PlusT, Family::MinusTinv}) {
    INFO(ppv::to_string(fam));
    const auto c = ppv::galois_descriptor_check(b.rd, without_family(b.seeds, fam));
    CHECK(c.status == CheckStatus::fail);
    CHECK(c.notes.find("missing") != std::string::npos);
  }
  // A seed whose Galois action fails contributes no descriptor.
  auto seeds = b.seeds;
  seeds[3].Y_local(1, 0) = seeds[3].Y_local(1, 0) + Series(2, {Coeff(1L)}, ppv::kExact);
  CHECK(ppv::realized_descriptors(b.rd, seeds).size() == 3);
  CHECK(ppv::galois_descriptor_check(b.rd, seeds).status == CheckStatus::fail);
}

TEST_CASE("build input errors", "[forge]") {
  const auto a2 = RootDatum::make("A2");
  try {
    ppv::build(a2, ppv::PointSet({Rat(0), Rat(1)}), 12);
    FAIL("expected WrongPointCount");
  } catch (const ppv::WrongPointCount &e) {
    CHECK(std::string(e.what()).find("12") != std::string::npos);
  }
  CHECK_THROWS_AS(ppv::build(RootDatum::make("A1"), 7), ppv::InvalidInput);
  CHECK(ppv::default_points(a2).size() == 12);
}

TEST_CASE("build is deterministic and consistent under refinement", "[forge]") {
  const auto &b = a1_bundle();
  const auto again = ppv::build(RootDatum::make("A1"), 16);
  CHECK(again.A == b.A);
  CHECK(again.patch.Y == b.patch.Y);
  CHECK(again.report == b.report);

  const auto fine = ppv::build(RootDatum::make("A1"), 20);
  CHECK(fine.report.overall());
  CHECK(ppv::mat_agrees(fine.A, b.A));
  CHECK(ppv::mat_agrees(fine.patch.Y, b.patch.Y));
  for (std::size_t i = 0; i < b.ps.size(); ++i)
    CHECK(ppv::mat_agrees(fine.patch.Z[i], b.patch.Z[i]));
}

TEST_CASE("A1 coefficient matrix is rational of x-degree 9", "[forge][reconstruct]") {
  // The schedule 1, 2, 4, 8 at N = 16 is inconclusive; degree 9 needs N = 24.
  const auto &b = a1_bundle();
  for (const auto &r : b.reconstructions)
    CHECK_FALSE(r.success);
  CHECK(b.report.find("reconstruction")->status == CheckStatus::inconclusive);

  const int N = 24;
  const auto rd = RootDatum::make("A1");
  const auto ps = ppv::default_points(rd);
  ppv::PatchProblem<Coeff> p{ps, {}, 2, N};
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto [fam, alpha] = ppv::seed_assignment(rd, i);
    p.inputs.push_back(ppv::make_seed(rd, alpha, fam, ps[i], N).Y_local);
  }
  const auto sol = ppv::factor_simultaneous(p);
  const auto A = ppv::mat_dx(sol.Y) * ppv::mat_inv(sol.Y);
  std::vector<ppv::ReconstructionResult<Coeff>> rs(4);
  ppv::parallel_for(4, [&](std::size_t k) { rs[k] = ppv::reconstruct(A.data()[k], 9, N); });
  for (std::size_t k = 0; k < 4; ++k) {
    INFO("entry " << k);
    REQUIRE(rs[k].success);
    CHECK(rs[k].d_x_den <= 9);
    // residual recomputed with num/den arithmetic
    auto to_rs = [](const Series &s) { return s.map_coeffs([](const Coeff &c) { return to_rf(c); }); };
    CHECK(ppv::zero_mod(to_rs(rs[k].denominator) * to_rs(A.data()[k]) - to_rs(rs[k].numerator), N));
  }
}

TEST_CASE("reconstruct_entries controls", "[forge][reconstruct]") {
  SeriesMatrix A(1, 2);
  A(0, 0) = Series::zero(12);
  A(0, 1) = ppv::make_f<Coeff>(Rat(0), 12);
  const auto rs = ppv::reconstruct_entries(A, 12);
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].success);
  CHECK(rs[0].d_x_den == 0);
  CHECK_FALSE(rs[1].success);
}

TEST_CASE("check status names round-trip", "[forge]") {
  for (auto s : {CheckStatus::pass, CheckStatus::fail, CheckStatus::inconclusive})
    CHECK(ppv::check_status_from_string(ppv::to_string(s)) == s);
  CHECK_THROWS_AS(ppv::check_status_from_string("maybe"), ppv::ParseError);
}
