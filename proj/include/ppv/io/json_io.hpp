#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "ppv/error.hpp"
#include "ppv/forge.hpp"

namespace ppv::io {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

namespace detail {

template <class F> auto guarded(const char *what, F &&f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError &) {
    throw;
  } catch (const json::exception &e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

inline int get_int(const json &j, const char *key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw ParseError(std::string("expected integer field '") + key + "'");
  return j.at(key).get<int>();
}

inline const json &get(const json &j, const char *key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline const json &get_array(const json &j, const char *key) {
  const json &a = get(j, key);
  if (!a.is_array())
    throw ParseError(std::string("field '") + key + "' is not an array");
  return a;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Scalars.

inline json to_json(const Rat &r) { return r.str(); }

inline Rat rat_from_json(const json &j) {
  if (!j.is_string())
    throw ParseError("rational must be a \"p/q\" string");
  return Rat::parse(j.get<std::string>());
}

inline json to_json(const Poly<Rat> &p) {
  json a = json::array();
  for (const auto &c : p.coeffs())
    a.push_back(to_json(c));
  return a;
}

inline Poly<Rat> poly_from_json(const json &j) {
  if (!j.is_array())
    throw ParseError("polynomial must be an array of coefficients");
  std::vector<Rat> c;
  for (const auto &e : j)
    c.push_back(rat_from_json(e));
  return Poly<Rat>(std::move(c));
}

inline json to_json(const RatFunc<Rat> &f) {
  return json{{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

inline RatFunc<Rat> ratfunc_from_json(const json &j) {
  return RatFunc<Rat>(poly_from_json(detail::get(j, "num")), poly_from_json(detail::get(j, "den")));
}

/// Coefficients are written as a polynomial part plus principal parts,
/// {"poly": [...], "poles": [{"at": q, "coeffs": [c_1, ..., c_k]}]}, meaning
/// poly(x) + sum c_j / (x - q)^j.
inline json to_json(const Coeff &c) {
  json poles = json::array();
  for (const auto &[q, part] : c.parts()) {
    json cs = json::array();
    for (const auto &v : part)
      cs.push_back(to_json(v));
    poles.push_back(json{{"at", to_json(q)}, {"coeffs", std::move(cs)}});
  }
  return json{{"poly", to_json(c.poly())}, {"poles", std::move(poles)}};
}

namespace detail {

inline Coeff partial_frac_from_json(const json &j, const std::vector<Rat> *points) {
  Coeff out(poly_from_json(detail::get(j, "poly")));
  Rat prev;
  bool first = true;
  for (const auto &p : detail::get_array(j, "poles")) {
    const Rat q = rat_from_json(detail::get(p, "at"));
    if (!first && !(prev < q))
      throw ParseError("poles must be listed once each, in increasing order");
    first = false;
    prev = q;
    if (points && std::find(points->begin(), points->end(), q) == points->end())
      throw PoleOutsidePointSet("pole at x = " + q.str() + " is not a patching point");
    const json &cs = detail::get_array(p, "coeffs");
    if (cs.empty() || rat_from_json(cs.back()).is_zero())
      throw ParseError("principal part at " + q.str() + " must end in a nonzero coefficient");
    for (std::size_t k = 0; k < cs.size(); ++k)
      out += Coeff::pole(q, k + 1, rat_from_json(cs[k]));
  }
  return out;
}

} // namespace detail

/// Accepts the partial-fraction form above or {"num", "den"}; every pole must
/// lie in `points`.
inline Coeff coeff_from_json(const json &j, const std::vector<Rat> &points) {
  if (j.is_object() && j.contains("num"))
    return Coeff::from_ratfunc(ratfunc_from_json(j), points);
  return detail::partial_frac_from_json(j, &points);
}

/// Either coefficient form, read as a plain rational function.
inline RatFunc<Rat> any_coeff_from_json(const json &j) {
  if (j.is_object() && j.contains("num"))
    return ratfunc_from_json(j);
  return detail::partial_frac_from_json(j, nullptr).to_ratfunc();
}

// ---------------------------------------------------------------------------
// Series and matrices. "prec": null marks an exact series.

template <class C> json series_to_json(const TSeries<C> &s) {
  json j;
  j["t_min"] = s.is_zero() ? 0 : s.t_min();
  j["prec"] = s.is_exact() ? json(nullptr) : json(s.prec());
  json c = json::array();
  for (const auto &e : s.coeffs())
    c.push_back(to_json(e));
  j["coeffs"] = std::move(c);
  return j;
}

template <class C, class F> TSeries<C> series_from_json(const json &j, F &&coeff) {
  const json &p = detail::get(j, "prec");
  int prec = kExact;
  if (!p.is_null()) {
    if (!p.is_number_integer())
      throw ParseError("series prec must be an integer or null");
    prec = p.get<int>();
  }
  const int t_min = detail::get_int(j, "t_min");
  std::vector<C> c;
  for (const auto &e : detail::get_array(j, "coeffs"))
    c.push_back(coeff(e));
  if (!c.empty() && prec < kExact && t_min + static_cast<int>(c.size()) > prec)
    throw ParseError("series stores coefficients beyond its precision");
  return TSeries<C>(t_min, std::move(c), prec);
}

inline Series series_from_json(const json &j, const std::vector<Rat> &points) {
  return series_from_json<Coeff>(j, [&](const json &e) { return coeff_from_json(e, points); });
}

inline TSeries<RatFunc<Rat>> ratfunc_series_from_json(const json &j) {
  return series_from_json<RatFunc<Rat>>(j, [](const json &e) { return any_coeff_from_json(e); });
}

template <class C> json matrix_to_json(const TMatrix<C> &m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k)
      row.push_back(series_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline SeriesMatrix matrix_from_json(const json &j, const std::vector<Rat> &points) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw ParseError("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size(), cols = j.front().size();
  SeriesMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw ParseError("matrix rows have different lengths");
    for (std::size_t k = 0; k < cols; ++k)
      m(i, k) = series_from_json(j[i][k], points);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Bundle pieces.

inline json to_json(const RootId &r) { return json(r); }

inline RootId root_from_json(const json &j) {
  if (!j.is_array())
    throw ParseError("root must be an integer array");
  RootId r;
  for (const auto &e : j) {
    if (!e.is_number_integer())
      throw ParseError("root must be an integer array");
    r.push_back(e.get<int>());
  }
  return r;
}

inline json points_to_json(const PointSet &ps) {
  json a = json::array();
  for (const auto &q : ps.points())
    a.push_back(to_json(q));
  return a;
}

inline PointSet points_from_json(const json &j) {
  if (!j.is_array())
    throw ParseError("points must be an array of \"p/q\" strings");
  std::vector<Rat> pts;
  for (const auto &e : j)
    pts.push_back(rat_from_json(e));
  return PointSet(std::move(pts));
}

inline json to_json(const LocalSeed<Coeff> &s) {
  return json{{"point", to_json(s.point)},
              {"family", to_string(s.family)},
              {"root", to_json(s.root)},
              {"c", series_to_json(s.c)},
              {"Y_local", matrix_to_json(s.Y_local)},
              {"A_local", matrix_to_json(s.A_local)}};
}

/// f is not stored; it is determined by the point and the precision.
inline LocalSeed<Coeff> seed_from_json(const json &j, const std::vector<Rat> &points, int N) {
  LocalSeed<Coeff> s;
  s.point = rat_from_json(detail::get(j, "point"));
  s.family = family_from_string(detail::get(j, "family").get<std::string>());
  s.root = root_from_json(detail::get(j, "root"));
  s.f = make_f<Coeff>(s.point, s.family == Family::MinusTinv ? N + 1 : N);
  s.c = series_from_json(detail::get(j, "c"), points);
  s.Y_local = matrix_from_json(detail::get(j, "Y_local"), points);
  s.A_local = matrix_from_json(detail::get(j, "A_local"), points);
  return s;
}

inline json to_json(const ReconstructionResult<Coeff> &r) {
  json j{{"success", r.success}, {"bound", r.bound}, {"verified_order", r.verified_order}};
  if (r.success) {
    j["numerator"] = series_to_json(r.numerator);
    j["denominator"] = series_to_json(r.denominator);
    j["d_x_num"] = r.d_x_num;
    j["d_x_den"] = r.d_x_den;
  }
  return j;
}

inline ReconstructionResult<Coeff> reconstruction_from_json(const json &j) {
  ReconstructionResult<Coeff> r;
  r.success = detail::get(j, "success").get<bool>();
  r.bound = detail::get_int(j, "bound");
  r.verified_order = detail::get_int(j, "verified_order");
  if (r.success) {
    // Certificates are polynomial in x.
    r.numerator = series_from_json(detail::get(j, "numerator"), {});
    r.denominator = series_from_json(detail::get(j, "denominator"), {});
    r.d_x_num = detail::get_int(j, "d_x_num");
    r.d_x_den = detail::get_int(j, "d_x_den");
  }
  return r;
}

inline json to_json(const GroupDescriptor &d) {
  return json{{"root", to_json(d.root)}, {"multiplier", to_string(d.multiplier)}};
}

inline GroupDescriptor descriptor_from_json(const json &j) {
  return {root_from_json(detail::get(j, "root")),
          multiplier_from_string(detail::get(j, "multiplier").get<std::string>())};
}

inline json to_json(const VerificationReport &r) {
  json checks = json::array();
  for (const auto &c : r.checks)
    checks.push_back(json{{"name", c.name},
                          {"status", to_string(c.status)},
                          {"mandatory", c.mandatory},
                          {"verified_order", c.verified_order},
                          {"notes", c.notes}});
  return json{{"overall", r.overall() ? "pass" : "fail"}, {"checks", checks}, {"notes", r.notes}};
}

inline VerificationReport report_from_json(const json &j) {
  VerificationReport r;
  for (const auto &c : detail::get_array(j, "checks"))
    r.checks.push_back({detail::get(c, "name").get<std::string>(),
                        check_status_from_string(detail::get(c, "status").get<std::string>()),
                        detail::get(c, "mandatory").get<bool>(), detail::get_int(c, "verified_order"),
                        detail::get(c, "notes").get<std::string>()});
  for (const auto &n : detail::get_array(j, "notes"))
    r.notes.push_back(n.get<std::string>());
  return r;
}

template <class C> json patch_to_json(const PatchSolution<C> &s) {
  json z = json::array();
  for (const auto &m : s.Z)
    z.push_back(matrix_to_json(m));
  return json{{"Y", matrix_to_json(s.Y)}, {"Z", std::move(z)}, {"achieved_order", s.achieved_order}};
}

inline PatchSolution<Coeff> patch_from_json(const json &j, const std::vector<Rat> &points) {
  PatchSolution<Coeff> s;
  s.Y = matrix_from_json(detail::get(j, "Y"), points);
  for (const auto &m : detail::get_array(j, "Z"))
    s.Z.push_back(matrix_from_json(m, points));
  s.achieved_order = detail::get_int(j, "achieved_order");
  return s;
}

// ---------------------------------------------------------------------------
// Whole documents.

inline json bundle_to_json(const EquationBundle &b) {
  json j;
  j["format_version"] = kFormatVersion;
  j["group"] = json{{"type", std::string(1, b.rd.type())}, {"rank", b.rd.rank()}, {"label", b.rd.label()}};
  j["points"] = points_to_json(b.ps);
  j["precision"] = b.N;
  json seeds = json::array();
  for (const auto &s : b.seeds)
    seeds.push_back(to_json(s));
  j["seeds"] = std::move(seeds);
  j["patch"] = patch_to_json(b.patch);
  j["matrix_A"] = matrix_to_json(b.A);
  json rec = json::array();
  for (const auto &r : b.reconstructions)
    rec.push_back(to_json(r));
  j["reconstructions"] = std::move(rec);
  json desc = json::array();
  for (const auto &d : b.descriptors)
    desc.push_back(to_json(d));
  j["descriptors"] = std::move(desc);
  j["report"] = to_json(b.report);
  return j;
}

inline EquationBundle bundle_from_json(const json &j) {
  return detail::guarded("bundle", [&] {
    if (!j.is_object())
      throw ParseError("bundle must be a JSON object");
    const int version = detail::get_int(j, "format_version");
    if (version != kFormatVersion)
      throw ParseError("unsupported format_version " + std::to_string(version));
    const json &g = detail::get(j, "group");
    EquationBundle b;
    try {
      b.rd = RootDatum::make(detail::get(g, "label").get<std::string>());
    } catch (const InvalidInput &e) {
      throw ParseError(e.what());
    }
    if (detail::get_int(g, "rank") != b.rd.rank() ||
        detail::get(g, "type").get<std::string>() != std::string(1, b.rd.type()))
      throw ParseError("group type/rank do not match label " + b.rd.label());
    try {
      b.ps = points_from_json(detail::get(j, "points"));
    } catch (const InvalidPoints &e) {
      throw ParseError(e.what());
    }
    const auto &pts = b.ps.points();
    b.N = detail::get_int(j, "precision");
    for (const auto &s : detail::get_array(j, "seeds"))
      b.seeds.push_back(seed_from_json(s, pts, b.N));
    b.patch = patch_from_json(detail::get(j, "patch"), pts);
    b.A = matrix_from_json(detail::get(j, "matrix_A"), pts);
    for (const auto &r : detail::get_array(j, "reconstructions"))
      b.reconstructions.push_back(reconstruction_from_json(r));
    for (const auto &d : detail::get_array(j, "descriptors"))
      b.descriptors.push_back(descriptor_from_json(d));
    b.report = report_from_json(detail::get(j, "report"));
    return b;
  });
}

/// Standalone factorization input: {"points", "precision", "inputs": [matrix]}.
inline PatchProblem<Coeff> patch_problem_from_json(const json &j) {
  return detail::guarded("patch problem", [&] {
    PatchProblem<Coeff> p;
    p.ps = points_from_json(detail::get(j, "points"));
    p.N_target = detail::get_int(j, "precision");
    for (const auto &m : detail::get_array(j, "inputs"))
      p.inputs.push_back(matrix_from_json(m, p.ps.points()));
    if (p.inputs.empty())
      throw ParseError("no input matrices");
    p.n = p.inputs.front().rows();
    return p;
  });
}

inline json patch_problem_to_json(const PatchProblem<Coeff> &p) {
  json in = json::array();
  for (const auto &m : p.inputs)
    in.push_back(matrix_to_json(m));
  return json{{"points", points_to_json(p.ps)}, {"precision", p.N_target}, {"inputs", std::move(in)}};
}

inline json to_json(const PatchReport &r) {
  return json{{"pass", r.pass()},
              {"verified_order", r.verified_order},
              {"Y_in_F0_ring", r.y_in_F0},
              {"Z_in_Fi_ring", r.z_in_Fi},
              {"identity_mod_t", r.identity_mod_t}};
}

} // namespace ppv::io
