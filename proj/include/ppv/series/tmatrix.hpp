#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "ppv/error.hpp"
#include "ppv/exact/matrix.hpp"
#include "ppv/series/tseries.hpp"

namespace ppv {

/// Matrix of truncated series; the shared precision is the minimum over
/// entries.
template <class C> using TMatrix = Matrix<TSeries<C>>;

template <class C> TMatrix<C> tmat_identity(std::size_t n) {
  return TMatrix<C>::identity(n, TSeries<C>(C(1L)), TSeries<C>());
}

template <class C> int mat_prec(const TMatrix<C> &m) {
  int p = kExact;
  for (const auto &e : m.data())
    p = std::min(p, e.prec());
  return p;
}

/// Lowest t-exponent among nonzero entries (kExact if all vanish).
template <class C> int mat_valuation(const TMatrix<C> &m) {
  int v = kExact;
  for (const auto &e : m.data())
    if (!e.is_zero())
      v = std::min(v, e.t_min());
  return v;
}

template <class C> TMatrix<C> mat_truncate(const TMatrix<C> &m, int prec) {
  return m.map([prec](const TSeries<C> &s) { return s.truncated(prec); });
}

template <class C> TMatrix<C> mat_dx(const TMatrix<C> &m) {
  return m.map([](const TSeries<C> &s) { return s.dx(); });
}

template <class C> TMatrix<C> mat_dt(const TMatrix<C> &m) {
  return m.map([](const TSeries<C> &s) { return s.dt(); });
}

/// Coefficient matrix of t^k.
template <class C> Matrix<C> coeff_matrix(const TMatrix<C> &m, int k) {
  Matrix<C> out(m.rows(), m.cols(), C(0L));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = m(i, j).coeff(k);
  return out;
}

/// Assembles sum_k coeffs[k] t^{t0 + k} with the given precision.
template <class C>
TMatrix<C> from_coeff_matrices(const std::vector<Matrix<C>> &coeffs, int t0,
                               std::size_t rows, std::size_t cols, int prec) {
  TMatrix<C> out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<C> c;
      c.reserve(coeffs.size());
      for (const auto &m : coeffs)
        c.push_back(m(i, j));
      out(i, j) = TSeries<C>(t0, std::move(c), prec);
    }
  return out;
}

/// True iff every entry of a - b vanishes modulo t^order and both sides
/// are known to that order.
template <class C> bool mat_zero_mod(const TMatrix<C> &m, int order) {
  for (const auto &e : m.data())
    if (!zero_mod(e, order))
      return false;
  return true;
}

/// Largest k <= cap such that m vanishes modulo t^k.
template <class C> int mat_zero_order(const TMatrix<C> &m, int cap) {
  int k = std::min(cap, mat_prec(m));
  for (const auto &e : m.data())
    if (!e.is_zero())
      k = std::min(k, e.t_min());
  return k;
}

template <class C> bool mat_agrees(const TMatrix<C> &a, const TMatrix<C> &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return false;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    if (!agrees(a.data()[i], b.data()[i]))
      return false;
  return true;
}

/// A == I modulo t (requires valuation >= 0).
template <class C> bool is_identity_mod_t(const TMatrix<C> &m) {
  if (!m.square() || mat_prec(m) < 1)
    return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto &e = m(i, j);
      if (!e.is_zero() && e.t_min() < 0)
        return false;
      if (e.coeff(0) != C(i == j ? 1L : 0L))
        return false;
    }
  return true;
}

/// t-adic inverse by block back-substitution. With A = t^v (B_0 + B_1 t + ...)
/// and B_0 invertible over the coefficient field, A^{-1} = t^{-v} (C_0 + ...)
/// where C_0 = B_0^{-1} and C_k = -C_0 sum_{j=1}^k B_j C_{k-j}. The result
/// carries precision prec(A) - 2v. Exact inputs need an explicit cap.
template <class C>
TMatrix<C> mat_inv(const TMatrix<C> &a, std::optional<int> cap = std::nullopt) {
  if (!a.square())
    throw InvalidInput("mat_inv: matrix is not square");
  const std::size_t n = a.rows();
  const int v = mat_valuation(a);
  if (v >= kExact)
    throw SingularLeadingMatrix("matrix is zero up to its precision");
  int out_prec;
  const int p = mat_prec(a);
  if (p >= kExact) {
    if (!cap)
      throw InvalidInput("mat_inv of an exact matrix needs a precision cap");
    out_prec = *cap;
  } else {
    out_prec = p - 2 * v;
    if (cap)
      out_prec = std::min(out_prec, *cap);
  }
  const int count = out_prec + v;
  const int avail = p >= kExact ? count : p - v;
  std::vector<Matrix<C>> B;
  for (int j = 0; j < std::min(count, avail); ++j)
    B.push_back(coeff_matrix(a, v + j));
  if (B.empty())
    return from_coeff_matrices<C>({}, -v, n, n, out_prec);

  const Matrix<C> eye = Matrix<C>::identity(n, C(1L), C(0L));
  const bool unit_lead = B[0] == eye;
  const Matrix<C> C0 = unit_lead ? eye : field_inverse(B[0]);
  std::vector<Matrix<C>> out;
  out.push_back(C0);
  for (int k = 1; k < count; ++k) {
    Matrix<C> acc(n, n, C(0L));
    for (int j = 1; j <= k && j < static_cast<int>(B.size()); ++j)
      acc += B[static_cast<std::size_t>(j)] * out[static_cast<std::size_t>(k - j)];
    out.push_back(unit_lead ? -acc : -(C0 * acc));
  }
  return from_coeff_matrices(out, -v, n, n, out_prec);
}

template <class C> TSeries<C> mat_trace(const TMatrix<C> &m) {
  TSeries<C> acc = m(0, 0);
  for (std::size_t i = 1; i < m.rows(); ++i)
    acc += m(i, i);
  return acc;
}

} // namespace ppv
