#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "ppv/error.hpp"
#include "ppv/local_seed.hpp"
#include "ppv/parallel.hpp"
#include "ppv/patcher.hpp"
#include "ppv/rootdata.hpp"
#include "ppv/tower.hpp"

namespace ppv {

enum class CheckStatus { pass, fail, inconclusive };

inline std::string to_string(CheckStatus s) {
  switch (s) {
  case CheckStatus::pass:
    return "pass";
  case CheckStatus::fail:
    return "fail";
  case CheckStatus::inconclusive:
    return "inconclusive";
  }
  return "?";
}

inline CheckStatus check_status_from_string(const std::string &s) {
  if (s == "pass")
    return CheckStatus::pass;
  if (s == "fail")
    return CheckStatus::fail;
  if (s == "inconclusive")
    return CheckStatus::inconclusive;
  throw ParseError("unknown check status '" + s + "'");
}

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::fail;
  bool mandatory = true;
  int verified_order = 0;
  std::string notes;

  friend bool operator==(const CheckResult &, const CheckResult &) = default;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  /// Pass iff every mandatory check passes.
  [[nodiscard]] bool overall() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) {
      return !c.mandatory || c.status == CheckStatus::pass;
    });
  }
  [[nodiscard]] const CheckResult *find(const std::string &name) const {
    for (const auto &c : checks)
      if (c.name == name)
        return &c;
    return nullptr;
  }

  friend bool operator==(const VerificationReport &, const VerificationReport &) = default;
};

struct EquationBundle {
  RootDatum rd;
  PointSet ps;
  int N = 0;
  std::vector<LocalSeed<Coeff>> seeds;
  PatchSolution<Coeff> patch;
  SeriesMatrix A;
  std::vector<ReconstructionResult<Coeff>> reconstructions; // row-major over A
  std::vector<GroupDescriptor> descriptors;
  VerificationReport report;
};

inline const std::vector<std::string> &standard_notes() {
  static const std::vector<std::string> notes = {
      "MinusTinv seeds use c = t^-1 f - 1/(x-q) in place of t^-1 f; sigma_a acts identically "
      "on the quotient, the realized group is still U_-alpha(const * t^-1) and Y_local is I "
      "mod t",
      "Springer identity holds as u_a(f) u_-a(-1/f) u_a(f) = a^vee(f) n_a; the variant with "
      "+1/f in the middle factor fails"};
  return notes;
}

/// Points 0, 1, ..., 4m-1.
inline PointSet default_points(const RootDatum &rd) {
  std::vector<Rat> pts;
  for (std::size_t i = 0; i < 4 * rd.num_positive(); ++i)
    pts.emplace_back(static_cast<long>(i));
  return PointSet(pts);
}

/// Seed of the point with index k: blocks of m points take the families
/// PlusConst, MinusConst, PlusT, MinusTinv in turn, cycling through Phi+.
inline std::pair<Family, RootId> seed_assignment(const RootDatum &rd, std::size_t k) {
  static constexpr Family order[] = {Family::PlusConst, Family::MinusConst, Family::PlusT,
                                     Family::MinusTinv};
  const std::size_t m = rd.num_positive();
  return {order[k / m], rd.positive_roots()[k % m]};
}

/// The positive root a seed was built from.
inline RootId seed_alpha(const LocalSeed<Coeff> &s) {
  return s.family == Family::PlusConst || s.family == Family::PlusT ? s.root : negate(s.root);
}

// ---------------------------------------------------------------------------
// Individual checks.

/// A Z_i == d/dx Z_i + Z_i A_i, the gauge identity multiplied through by Z_i.
inline bool gauge_check(const EquationBundle &b, std::size_t i) {
  const int N = b.patch.achieved_order;
  const auto &Z = b.patch.Z.at(i);
  const auto &Ai = b.seeds.at(i).A_local;
  return mat_zero_mod(b.A * Z - mat_dx(Z) - Z * Ai, N);
}

inline CheckResult gauge_checks(const EquationBundle &b) {
  CheckResult c{"gauge_identity", CheckStatus::pass, true, b.patch.achieved_order, ""};
  std::vector<int> ok(b.seeds.size(), 0);
  parallel_for(b.seeds.size(), [&](std::size_t i) { ok[i] = gauge_check(b, i); });
  std::string bad;
  for (std::size_t i = 0; i < ok.size(); ++i)
    if (!ok[i])
      bad += (bad.empty() ? "" : ", ") + b.ps[i].str();
  if (!bad.empty()) {
    c.status = CheckStatus::fail;
    c.verified_order = 0;
    c.notes = "fails at q = " + bad;
  } else {
    c.notes = std::to_string(ok.size()) + " points";
  }
  return c;
}

/// Per-entry F_0 membership of A, reconstruction on the degree schedule and
/// the per-point gauge identity.
inline std::vector<CheckResult> membership_check(const EquationBundle &b) {
  std::vector<CheckResult> out;
  const int N = b.patch.achieved_order;
  bool f0 = true;
  for (const auto &e : b.A.data())
    f0 = f0 && in_F0_ring(e, b.ps);
  out.push_back({"A_in_F0_ring", f0 ? CheckStatus::pass : CheckStatus::fail, true, f0 ? N : 0,
                 ""});
  std::size_t certified = 0, broken = 0;
  int order = N;
  for (std::size_t k = 0; k < b.reconstructions.size(); ++k) {
    const auto &r = b.reconstructions[k];
    if (!r.success) {
      order = 0;
      continue;
    }
    // A stored certificate must still satisfy Q a == P.
    if (k < b.A.data().size() &&
        zero_mod(r.denominator * b.A.data()[k] - r.numerator, r.verified_order))
      ++certified;
    else
      ++broken;
  }
  CheckResult rc{"reconstruction",
                 broken ? CheckStatus::fail
                 : certified == b.reconstructions.size() && !b.reconstructions.empty()
                     ? CheckStatus::pass
                     : CheckStatus::inconclusive,
                 false, order, ""};
  rc.notes = std::to_string(certified) + "/" + std::to_string(b.reconstructions.size()) +
             " entries certified";
  if (broken)
    rc.notes += "; " + std::to_string(broken) + " stored certificates do not verify";
  if (rc.status == CheckStatus::inconclusive)
    rc.notes += "; the rest are inconclusive at bounds d_x in {1,2,4,8} with " +
                std::to_string(N) + " orders";
  out.push_back(std::move(rc));
  out.push_back(gauge_checks(b));
  return out;
}

/// Descriptors realized by seeds whose Galois action was verified.
inline std::vector<GroupDescriptor> realized_descriptors(const RootDatum &rd,
                                                         const std::vector<LocalSeed<Coeff>> &seeds,
                                                         std::vector<int> *action_ok = nullptr) {
  std::vector<int> ok(seeds.size(), 0);
  parallel_for(seeds.size(), [&](std::size_t i) { ok[i] = galois_action_check(rd, seeds[i]); });
  std::vector<GroupDescriptor> out;
  for (std::size_t i = 0; i < seeds.size(); ++i)
    if (ok[i])
      out.push_back({seeds[i].root, family_multiplier(seeds[i].family)});
  if (action_ok)
    *action_ok = ok;
  return out;
}

/// Runs the generation criterion on the descriptors of verified seeds.
inline CheckResult galois_descriptor_check(const RootDatum &rd,
                                           const std::vector<LocalSeed<Coeff>> &seeds) {
  const auto desc = realized_descriptors(rd, seeds);
  const auto rep = propgen_hypothesis_check(rd, desc);
  CheckResult c{"generation_hypotheses", rep.pass ? CheckStatus::pass : CheckStatus::fail, true,
                0, ""};
  c.notes = std::to_string(desc.size()) + " descriptors";
  for (const auto &m : rep.missing)
    c.notes += "; missing " + m;
  return c;
}

inline CheckResult galois_descriptor_check(const EquationBundle &b) {
  return galois_descriptor_check(b.rd, b.seeds);
}

namespace detail {

inline CheckResult make_check(std::string name, bool ok, int order, std::string notes = "",
                              bool mandatory = true) {
  return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, mandatory, ok ? order : 0,
          std::move(notes)};
}

/// The stored seed is what its (point, family, root) describe.
inline bool seed_consistent(const RootDatum &rd, const LocalSeed<Coeff> &s, int N) {
  if (!rd.contains(s.root))
    return false;
  const RootId alpha = seed_alpha(s);
  if (!rd.root(alpha).positive)
    return false;
  const auto fresh = make_seed(rd, alpha, s.family, s.point, N);
  return fresh.c == s.c && fresh.Y_local == s.Y_local && fresh.A_local == s.A_local;
}

inline std::string point_list(const std::vector<std::size_t> &idx, const PointSet &ps) {
  std::string s;
  for (auto i : idx)
    s += (s.empty() ? "" : ", ") + ps[i].str();
  return s;
}

} // namespace detail

/// Recomputes every check from the bundle's raw data. The stored report is
/// ignored.
inline VerificationReport verify_bundle(const EquationBundle &b) {
  VerificationReport rep;
  rep.notes = standard_notes();
  const int N = b.patch.achieved_order;
  const std::size_t n = b.rd.rep_dim();
  const std::size_t r = b.ps.size();
  const std::size_t m = b.rd.num_positive();

  bool shape = r == 4 * m && b.seeds.size() == r && b.patch.Z.size() == r && b.A.rows() == n &&
               b.A.cols() == n && b.patch.Y.rows() == n && N >= 1 && N <= b.N;
  for (std::size_t i = 0; shape && i < r; ++i) {
    const auto [fam, alpha] = seed_assignment(b.rd, i);
    shape = b.seeds[i].point == b.ps[i] && b.seeds[i].family == fam &&
            b.seeds[i].root == family_root(fam, alpha) && b.seeds[i].Y_local.rows() == n &&
            b.patch.Z[i].rows() == n;
  }
  rep.checks.push_back(detail::make_check("bundle_shape", shape, N,
                                          std::to_string(r) + " points, " + std::to_string(n) +
                                              "x" + std::to_string(n)));
  if (!shape)
    return rep;

  // Local seeds.
  std::vector<int> seed_ok(r, 0);
  parallel_for(r, [&](std::size_t i) {
    const auto &s = b.seeds[i];
    seed_ok[i] = detail::seed_consistent(b.rd, s, b.N) && is_identity_mod_t(s.Y_local) &&
                 mat_zero_mod(mat_dx(s.Y_local) - s.A_local * s.Y_local, b.N) &&
                 zero_mod(determinant(s.Y_local) - Series(1L), b.N);
  });
  {
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < r; ++i)
      if (!seed_ok[i])
        bad.push_back(i);
    rep.checks.push_back(detail::make_check("local_seeds", bad.empty(), b.N,
                                            bad.empty() ? std::to_string(r) + " seeds"
                                                        : "bad seeds at q = " +
                                                              detail::point_list(bad, b.ps)));
  }

  // Simultaneous factorization.
  PatchProblem<Coeff> prob{b.ps, {}, n, N};
  for (const auto &s : b.seeds)
    prob.inputs.push_back(s.Y_local);
  const PatchReport pr = verify_patch(prob, b.patch);
  {
    const int order = *std::min_element(pr.verified_order.begin(), pr.verified_order.end());
    std::string notes = "Z_i Y_i - Y vanishes mod t^" + std::to_string(order) + " at all points";
    if (!pr.y_in_F0)
      notes += "; Y not in the F0 ring";
    if (!pr.identity_mod_t)
      notes += "; Y is not I mod t";
    if (!pr.failed_points().empty())
      notes += "; fails at q = " + detail::point_list(pr.failed_points(), b.ps);
    rep.checks.push_back(detail::make_check("patch_factorization", pr.pass(), order, notes));
  }

  const SeriesMatrix &Y = b.patch.Y;
  {
    const int order = mat_zero_order(mat_dx(Y) - b.A * Y, N);
    rep.checks.push_back(detail::make_check("fundamental_identity", order >= N, order,
                                            "d/dx Y - A Y"));
  }
  for (auto &c : membership_check(b))
    rep.checks.push_back(std::move(c));
  {
    const bool ok = zero_mod(determinant(Y) - Series(1L), N);
    rep.checks.push_back(detail::make_check("det_Y_one", ok, N));
  }
  if (b.rd.type() == 'A') {
    const bool ok = zero_mod(mat_trace(b.A), N);
    rep.checks.push_back(detail::make_check("trace_A_zero", ok, N));
  }

  // Galois side.
  std::vector<int> action_ok;
  const auto desc = realized_descriptors(b.rd, b.seeds, &action_ok);
  {
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < r; ++i)
      if (!action_ok[i])
        bad.push_back(i);
    rep.checks.push_back(detail::make_check(
        "galois_action", bad.empty(), b.N,
        bad.empty() ? std::to_string(r) + " seeds, formal constant a"
                    : "fails at q = " + detail::point_list(bad, b.ps)));
  }
  {
    const auto pg = propgen_hypothesis_check(b.rd, desc);
    std::string notes = std::to_string(desc.size()) + " descriptors";
    for (const auto &mi : pg.missing)
      notes += "; missing " + mi;
    const bool stored_match = desc == b.descriptors;
    if (!stored_match)
      notes += "; stored descriptor list differs from the verified one";
    rep.checks.push_back(detail::make_check("generation_hypotheses", pg.pass && stored_match, 0,
                                            notes));
  }
  {
    std::vector<int> ok(r, 0);
    parallel_for(r, [&](std::size_t i) {
      ok[i] = local_model_check(b.ps[i], std::max(b.N, 4)).pass() && certify_nonrational(b.ps[i]);
    });
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < r; ++i)
      if (!ok[i])
        bad.push_back(i);
    rep.checks.push_back(detail::make_check(
        "local_model", bad.empty(), b.N,
        bad.empty() ? "2x2 model and nonzero residues of d/dx f at all points"
                    : "fails at q = " + detail::point_list(bad, b.ps)));
  }
  {
    bool ok = true;
    for (const auto &root : b.rd.roots())
      ok = ok && springer_identity_check(b.rd, root.id, formal_scalar());
    rep.checks.push_back(detail::make_check("springer_identity", ok, 0,
                                            std::to_string(b.rd.roots().size()) + " roots"));
  }
  return rep;
}

/// Reconstruction of every entry of A on the degree schedule.
inline std::vector<ReconstructionResult<Coeff>> reconstruct_entries(const SeriesMatrix &A, int N) {
  std::vector<ReconstructionResult<Coeff>> out(A.data().size());
  parallel_for(out.size(), [&](std::size_t k) { out[k] = reconstruct_schedule(A.data()[k], N); });
  return out;
}

/// The full construction: seeds, patching, A = (d/dx Y) Y^{-1}, reconstruction
/// attempts and the verification report.
inline EquationBundle build(const RootDatum &rd, const PointSet &ps, int N) {
  const std::size_t m = rd.num_positive();
  if (ps.size() != 4 * m)
    throw WrongPointCount(rd.label() + " has " + std::to_string(m) +
                          " positive roots and needs 4m = " + std::to_string(4 * m) +
                          " points, got " + std::to_string(ps.size()));
  if (N < 8)
    throw InvalidInput("precision must be at least 8, got " + std::to_string(N));
  EquationBundle b{rd, ps, N, {}, {}, {}, {}, {}, {}};
  b.seeds.resize(ps.size());
  parallel_for(ps.size(), [&](std::size_t i) {
    const auto [fam, alpha] = seed_assignment(rd, i);
    b.seeds[i] = make_seed(rd, alpha, fam, ps[i], N);
  });
  PatchProblem<Coeff> prob{ps, {}, rd.rep_dim(), N};
  for (const auto &s : b.seeds)
    prob.inputs.push_back(s.Y_local);
  b.patch = factor_simultaneous(prob);
  b.A = mat_dx(b.patch.Y) * mat_inv(b.patch.Y);
  b.reconstructions = reconstruct_entries(b.A, b.patch.achieved_order);
  b.descriptors = realized_descriptors(rd, b.seeds);
  b.report = verify_bundle(b);
  return b;
}

inline EquationBundle build(const RootDatum &rd, int N = 16) {
  return build(rd, default_points(rd), N);
}

} // namespace ppv
