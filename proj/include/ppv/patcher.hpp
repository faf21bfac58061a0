#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ppv/error.hpp"
#include "ppv/exact/matrix.hpp"
#include "ppv/exact/partial_frac.hpp"
#include "ppv/exact/ratfunc.hpp"
#include "ppv/parallel.hpp"
#include "ppv/series/tmatrix.hpp"
#include "ppv/tower.hpp"

namespace ppv {

// ---------------------------------------------------------------------------
// Principal parts of single coefficients.

template <class K> PartialFrac<K> coeff_principal_part(const PartialFrac<K> &c, const Rat &q) {
  return c.principal_part_fn(q);
}

inline RatFunc<Rat> coeff_principal_part(const RatFunc<Rat> &c, const Rat &q) {
  return principal_part(c, q).as_ratfunc();
}

/// Throws PoleOutsidePointSet unless every finite pole of c lies in ps.
template <class K> void require_poles_inside(const PartialFrac<K> &c, const PointSet &ps) {
  for (const auto &kv : c.parts())
    if (!ps.contains(kv.first))
      throw PoleOutsidePointSet("pole at x = " + kv.first.str() + " is not a patching point");
}

inline void require_poles_inside(const RatFunc<Rat> &c, const PointSet &ps) {
  if (!partial_fractions(c, ps.points()).rest.is_polynomial())
    throw PoleOutsidePointSet("coefficient " + c.num().to_string() + " / " +
                              c.den().to_string() + " has a pole outside the patching points");
}

/// E + C is pole-free at every point of ps, with C = -(sum of the principal
/// parts of E at the points). Returns (C, D = E + C); D is regular at ps[i]
/// (indeed at every point of ps).
template <class C>
std::pair<Matrix<C>, Matrix<C>> additive_split(const Matrix<C> &E, const PointSet &ps,
                                               std::size_t i) {
  if (i >= ps.size())
    throw InvalidInput("additive_split: point index " + std::to_string(i) + " out of range");
  Matrix<C> corr(E.rows(), E.cols(), C(0L));
  for (std::size_t k = 0; k < E.data().size(); ++k) {
    require_poles_inside(E.data()[k], ps);
    for (const Rat &q : ps.points())
      corr.data()[k] -= coeff_principal_part(E.data()[k], q);
  }
  Matrix<C> D = E + corr;
  return {std::move(corr), std::move(D)};
}

// ---------------------------------------------------------------------------
// Simultaneous factorization Y_i = Z_i^{-1} Y.

template <class C> struct PatchProblem {
  PointSet ps;
  std::vector<TMatrix<C>> inputs; // Y_i, one per point
  std::size_t n = 0;
  int N_target = 0;
};

template <class C> struct PatchSolution {
  TMatrix<C> Y;
  std::vector<TMatrix<C>> Z;
  int achieved_order = 0;
};

struct PatchReport {
  std::vector<int> verified_order; // per point: Z_i Y_i - Y vanishes mod t^k
  bool y_in_F0 = false;
  std::vector<bool> z_in_Fi;
  bool identity_mod_t = false;
  int target = 0;

  /// Points whose residual does not vanish to the target order.
  [[nodiscard]] std::vector<std::size_t> failed_points() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < verified_order.size(); ++i)
      if (verified_order[i] < target || !z_in_Fi[i])
        out.push_back(i);
    return out;
  }
  [[nodiscard]] bool pass() const {
    return y_in_F0 && identity_mod_t && failed_points().empty();
  }
};

namespace detail {

template <class C> void check_problem(const PatchProblem<C> &p) {
  if (p.inputs.size() != p.ps.size())
    throw WrongPointCount("patch problem has " + std::to_string(p.inputs.size()) +
                          " matrices for " + std::to_string(p.ps.size()) + " points");
  if (p.N_target < 1)
    throw InvalidInput("patch target order must be >= 1");
  for (std::size_t i = 0; i < p.inputs.size(); ++i) {
    const auto &Yi = p.inputs[i];
    if (Yi.rows() != p.n || Yi.cols() != p.n)
      throw InvalidInput("input " + std::to_string(i) + " is not " + std::to_string(p.n) + "x" +
                         std::to_string(p.n));
    if (mat_prec(Yi) < p.N_target)
      throw PrecisionExhausted("input " + std::to_string(i) + " is known mod t^" +
                               std::to_string(mat_prec(Yi)) + ", target is t^" +
                               std::to_string(p.N_target));
    if (!is_identity_mod_t(Yi))
      throw InvalidInput("input " + std::to_string(i) + " is not I mod t");
    for (const auto &e : Yi.data()) {
      for (const auto &c : e.coeffs())
        require_poles_inside(c, p.ps);
      if (!in_F0_ring(e, p.ps))
        throw PoleOutsidePointSet("input " + std::to_string(i) +
                                  " has a polynomial part (a pole at infinity)");
    }
  }
}

} // namespace detail

/// Order-by-order lifting. At stage N, with G_i the t^N coefficient of
/// Z_i Y_i - Y, the correction C = sum_j pp_{q_j}(G_j) goes into Y and
/// D_i = C - G_i (regular at q_i) into Z_i, which kills every t^N residual.
template <class C> PatchSolution<C> factor_simultaneous(const PatchProblem<C> &p) {
  detail::check_problem(p);
  const std::size_t r = p.ps.size(), n = p.n;
  const int N = p.N_target;
  const Matrix<C> I = Matrix<C>::identity(n, C(1L), C(0L));
  const Matrix<C> O(n, n, C(0L));

  std::vector<std::vector<Matrix<C>>> Yi(r);
  for (std::size_t i = 0; i < r; ++i)
    for (int k = 0; k < N; ++k)
      Yi[i].push_back(coeff_matrix(p.inputs[i], k));
  std::vector<Matrix<C>> Y(static_cast<std::size_t>(N), O);
  std::vector<std::vector<Matrix<C>>> Z(r, std::vector<Matrix<C>>(static_cast<std::size_t>(N), O));
  Y[0] = I;
  for (auto &z : Z)
    z[0] = I;

  std::vector<Matrix<C>> G(r);
  for (int stage = 1; stage < N; ++stage) {
    const auto s = static_cast<std::size_t>(stage);
    parallel_for(r, [&](std::size_t i) {
      Matrix<C> g = Yi[i][s] - Y[s];
      for (std::size_t a = 1; a <= s; ++a)
        g += Z[i][a] * Yi[i][s - a];
      G[i] = std::move(g);
    });
    Matrix<C> corr = O;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < n * n; ++k) {
        require_poles_inside(G[i].data()[k], p.ps);
        corr.data()[k] += coeff_principal_part(G[i].data()[k], p.ps[i]);
      }
    Y[s] += corr;
    for (std::size_t i = 0; i < r; ++i) {
      Z[i][s] += corr - G[i];
      for (std::size_t k = 0; k < n * n; ++k)
        if (!coeff_regular_at(Z[i][s].data()[k], p.ps[i]))
          throw InvalidInput("patch stage " + std::to_string(stage) +
                             " produced a correction singular at its own point");
    }
  }

  PatchSolution<C> sol;
  sol.Y = from_coeff_matrices(Y, 0, n, n, N);
  for (auto &z : Z)
    sol.Z.push_back(from_coeff_matrices(z, 0, n, n, N));
  sol.achieved_order = N;
  return sol;
}

/// Independent check of a solution: recomputes Z_i Y_i - Y with series
/// arithmetic (equivalent to Z_i^{-1} Y - Y_i since Z_i == I mod t) and all
/// ring memberships.
template <class C> PatchReport verify_patch(const PatchProblem<C> &p, const PatchSolution<C> &s) {
  PatchReport rep;
  rep.target = s.achieved_order;
  const std::size_t r = p.ps.size();
  rep.verified_order.assign(r, 0);
  rep.z_in_Fi.assign(r, false);
  if (s.Z.size() != r || p.inputs.size() != r)
    return rep;
  rep.y_in_F0 = true;
  for (const auto &e : s.Y.data())
    rep.y_in_F0 = rep.y_in_F0 && in_F0_ring(e, p.ps);
  rep.identity_mod_t = is_identity_mod_t(s.Y);
  std::vector<int> ok(r, 0);
  parallel_for(r, [&](std::size_t i) {
    const TMatrix<C> Zi = mat_truncate(s.Z[i], s.achieved_order);
    const TMatrix<C> Yi = mat_truncate(p.inputs[i], s.achieved_order);
    const TMatrix<C> Y = mat_truncate(s.Y, s.achieved_order);
    rep.verified_order[i] = mat_zero_order(Zi * Yi - Y, s.achieved_order);
    bool fi = is_identity_mod_t(Zi);
    for (const auto &e : Zi.data())
      fi = fi && in_Fi_ring(e, p.ps[i]);
    ok[i] = fi;
  });
  for (std::size_t i = 0; i < r; ++i)
    rep.z_in_Fi[i] = ok[i] != 0;
  return rep;
}

} // namespace ppv
