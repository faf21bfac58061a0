#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ppv/error.hpp"
#include "ppv/exact/partial_frac.hpp"
#include "ppv/exact/ratfunc.hpp"
#include "ppv/rootdata.hpp"
#include "ppv/series/tmatrix.hpp"
#include "ppv/series/tseries.hpp"

namespace ppv {

/// Default coefficient ring of the pipeline: Q(x) in partial-fraction form.
using Coeff = PartialFrac<Rat>;
using Series = TSeries<Coeff>;
using SeriesMatrix = TMatrix<Coeff>;

enum class Family { PlusConst, MinusConst, PlusT, MinusTinv };

inline std::string to_string(Family f) {
  switch (f) {
  case Family::PlusConst:
    return "PlusConst";
  case Family::MinusConst:
    return "MinusConst";
  case Family::PlusT:
    return "PlusT";
  case Family::MinusTinv:
    return "MinusTinv";
  }
  return "?";
}

inline Family family_from_string(const std::string &s) {
  for (Family f : {Family::PlusConst, Family::MinusConst, Family::PlusT, Family::MinusTinv})
    if (to_string(f) == s)
      return f;
  throw ParseError("unknown seed family '" + s + "'");
}

/// The root u is applied to: alpha for the Plus families, -alpha otherwise.
inline RootId family_root(Family fam, const RootId &alpha) {
  return fam == Family::PlusConst || fam == Family::PlusT ? alpha : negate(alpha);
}

/// The realized group U_root(constants * multiplier) of a family.
inline Multiplier family_multiplier(Family fam) {
  switch (fam) {
  case Family::PlusConst:
  case Family::MinusConst:
    return Multiplier::one;
  case Family::PlusT:
    return Multiplier::t;
  case Family::MinusTinv:
    return Multiplier::t_inverse;
  }
  return Multiplier::one;
}

template <class C = Coeff> struct LocalSeed {
  Rat point;
  Family family = Family::PlusConst;
  RootId root; // the root u is applied to
  TSeries<C> f;
  TSeries<C> c;
  TMatrix<C> Y_local;
  TMatrix<C> A_local;
};

/// f = sum_{n=1}^{N-1} (-1)^{n+1} t^n / (n (x - q)^n), known modulo t^N.
template <class C = Coeff> TSeries<C> make_f(const Rat &q, int N) {
  if (N < 2)
    throw InvalidInput("make_f needs N >= 2");
  using K = typename C::field_type;
  std::vector<C> out;
  for (int n = 1; n < N; ++n) {
    Rat w = Rat(n % 2 ? 1 : -1) / Rat(n);
    out.push_back(C::pole(q, static_cast<std::size_t>(n), K(w)));
  }
  return TSeries<C>(1, std::move(out), N);
}

/// The argument of u for a family, given f.
template <class C>
TSeries<C> family_argument(Family fam, const Rat &q, const TSeries<C> &f) {
  using K = typename C::field_type;
  switch (fam) {
  case Family::PlusConst:
  case Family::MinusConst:
    return f;
  case Family::PlusT:
    return f.shifted(1);
  case Family::MinusTinv:
    // t^{-1} f without its t^0 term 1/(x - q), so that u(c) == I mod t.
    return f.shifted(-1) - TSeries<C>(C::pole(q, 1, K(1L)));
  }
  return f;
}

/// Builds the local fundamental matrix Y = u_root(c) and A = (d/dx c) X_root,
/// both known modulo t^N.
template <class C = Coeff>
LocalSeed<C> make_seed(const RootDatum &rd, const RootId &alpha, Family fam, const Rat &q,
                       int N) {
  if (!rd.contains(alpha) || !rd.root(alpha).positive)
    throw InvalidInput("make_seed: " + root_name(alpha) + " is not a positive root of " +
                       rd.label());
  LocalSeed<C> s;
  s.point = q;
  s.family = fam;
  s.root = family_root(fam, alpha);
  s.f = make_f<C>(q, fam == Family::MinusTinv ? N + 1 : N);
  s.c = family_argument(fam, q, s.f).truncated(N);
  s.Y_local = u_matrix(rd, s.root, s.c);
  const TSeries<C> dc = s.c.dx();
  const auto &X = rd.root(s.root).nilpotent;
  s.A_local = TMatrix<C>(rd.rep_dim(), rd.rep_dim(), TSeries<C>());
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t j = 0; j < X.cols(); ++j)
      if (!X(i, j).is_zero())
        s.A_local(i, j) = dc * C(X(i, j));
  return s;
}

/// The group element Y^{-1} sigma_a(Y) should equal for a family.
template <class S>
Matrix<S> expected_galois_element(const RootDatum &rd, Family fam, const RootId &root,
                                  const S &a) {
  switch (fam) {
  case Family::PlusConst:
  case Family::MinusConst:
    return u_matrix(rd, root, a);
  case Family::PlusT:
    return u_matrix(rd, root, a.shifted(1));
  case Family::MinusTinv:
    return u_matrix(rd, root, a.shifted(-1));
  }
  return u_matrix(rd, root, a);
}

/// Reads a partial fraction over Q as one over a field extension L.
template <class L> PartialFrac<L> lift_field(const PartialFrac<Rat> &c) {
  std::vector<L> pc;
  for (const auto &v : c.poly().coeffs())
    pc.emplace_back(v);
  PartialFrac<L> out{Poly<L>(std::move(pc))};
  for (const auto &[q, part] : c.parts())
    for (std::size_t k = 0; k < part.size(); ++k)
      out += PartialFrac<L>::pole(q, k + 1, L(part[k]));
  return out;
}

/// sigma_a is f -> f + a for a constant a (d/dx a = d/dt a = 0). Rebuilds
/// the seed over Q(a) and compares Y^{-1} sigma_a(Y) with the family's
/// expected element of U_root modulo the available precision.
inline bool galois_action_check(const RootDatum &rd, const LocalSeed<Coeff> &seed,
                                const RatFunc<Rat> &a = RatFunc<Rat>::x()) {
  using CA = PartialFrac<RatFunc<Rat>>;
  const int N = seed.Y_local.rows() ? mat_prec(seed.Y_local) : 0;
  const int fN = seed.family == Family::MinusTinv ? N + 1 : N;
  const TSeries<CA> f = make_f<CA>(seed.point, fN);
  const TSeries<CA> fa = f + TSeries<CA>(CA(a));
  const TMatrix<CA> Y = u_matrix(rd, seed.root, family_argument(seed.family, seed.point, f).truncated(N));
  const TMatrix<CA> Ys =
      u_matrix(rd, seed.root, family_argument(seed.family, seed.point, fa).truncated(N));
  // The rebuilt Y must be the seed's Y read over Q(a).
  const TMatrix<CA> lifted = seed.Y_local.map([](const Series &s) {
    return s.map_coeffs([](const Coeff &c) { return lift_field<RatFunc<Rat>>(c); });
  });
  if (!(lifted == Y))
    return false;
  const TMatrix<CA> quotient = mat_inv(Y) * Ys;
  const TMatrix<CA> expected =
      expected_galois_element(rd, seed.family, seed.root, TSeries<CA>(CA(a)));
  return mat_prec(quotient) >= N - 1 && mat_agrees(quotient, expected);
}

// ---------------------------------------------------------------------------
// The 2x2 local model A~ = [[0, a], [0, 0]], Y~ = [[1, f], [0, 1]].

template <class C = Coeff> struct LocalModel2x2 {
  TMatrix<C> A_tilde;
  TMatrix<C> Y_tilde;
};

template <class C = Coeff> LocalModel2x2<C> local_model(const Rat &q, int N) {
  const TSeries<C> f = make_f<C>(q, N);
  LocalModel2x2<C> m;
  m.Y_tilde = tmat_identity<C>(2);
  m.Y_tilde(0, 1) = f;
  m.A_tilde = TMatrix<C>(2, 2, TSeries<C>());
  m.A_tilde(0, 1) = f.dx();
  return m;
}

struct LocalModelReport {
  bool solution = false;         // d/dx Y~ = A~ Y~
  bool derivations_commute = false; // f -> f + a commutes with d/dx and d/dt
  bool det_one = false;
  [[nodiscard]] bool pass() const { return solution && derivations_commute && det_one; }
};

/// Checks a 2x2 model (possibly altered by the caller) at the point q, with
/// sigma_a taken over Q(a) for the constant a.
inline LocalModelReport local_model_check(const LocalModel2x2<Coeff> &m, const Rat &q, int N,
                                          const RatFunc<Rat> &a = RatFunc<Rat>::x()) {
  using CA = PartialFrac<RatFunc<Rat>>;
  LocalModelReport r;
  r.solution = mat_zero_mod(mat_dx(m.Y_tilde) - m.A_tilde * m.Y_tilde, N);
  const TSeries<Coeff> det = determinant(m.Y_tilde);
  r.det_one = zero_mod(det - TSeries<Coeff>(1L), N);

  const TSeries<CA> f = make_f<CA>(q, N);
  const TSeries<CA> fa = f + TSeries<CA>(CA(a));
  auto lift = [](const TMatrix<Coeff> &x) {
    return x.map([](const Series &s) {
      return s.map_coeffs([](const Coeff &c) { return lift_field<RatFunc<Rat>>(c); });
    });
  };
  TMatrix<CA> Ys = lift(m.Y_tilde);
  Ys(0, 1) = fa; // sigma_a(Y~)
  // sigma_a fixes the base field, so sigma_a(d Y~) has the same entries with f
  // untouched apart from the constant shift, which every derivation kills.
  TMatrix<CA> dxY = lift(mat_dx(m.Y_tilde));
  TMatrix<CA> dtY = lift(mat_dt(m.Y_tilde));
  r.derivations_commute = mat_zero_mod(mat_dx(Ys) - dxY, N) &&
                          mat_zero_mod(mat_dt(Ys) - dtY, N - 1) &&
                          mat_zero_mod(mat_dx(Ys) - lift(m.A_tilde) * Ys, N);
  return r;
}

inline LocalModelReport local_model_check(const Rat &q, int N) {
  if (N < 4)
    throw InvalidInput("local_model_check needs N >= 4");
  return local_model_check(local_model<Coeff>(q, N), q, N);
}

// ---------------------------------------------------------------------------
// Non-rationality of f.

/// A rational function with a nonzero residue at one of `poles` has no
/// rational antiderivative. Returns true when such a residue is found.
template <class K>
bool nonzero_residue_certificate(const RatFunc<K> &g, const std::vector<K> &poles) {
  for (const K &p : poles)
    if (!residue(g, p).is_zero())
      return true;
  return false;
}

/// d/dx f = 1/(x - q + t) - 1/(x - q) over Q(t)(x): residue -1 at x = q and
/// +1 at x = q - t, so f is not in Q((t))(x).
inline bool certify_nonrational(const Rat &q) {
  using K = RatFunc<Rat>; // Q(t)
  const K t = K::x();
  const K kq(q);
  const RatFunc<K> x = RatFunc<K>::x();
  const RatFunc<K> g = RatFunc<K>(1L) / (x - RatFunc<K>(kq - t)) - RatFunc<K>(1L) / (x - RatFunc<K>(kq));
  return residue(g, kq) == K(-1L) && residue(g, kq - t) == K(1L) &&
         nonzero_residue_certificate(g, std::vector<K>{kq, kq - t});
}

} // namespace ppv
