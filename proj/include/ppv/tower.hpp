#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ppv/error.hpp"
#include "ppv/exact/partial_frac.hpp"
#include "ppv/exact/ratfunc.hpp"
#include "ppv/series/tseries.hpp"

namespace ppv {

/// Pairwise distinct rational points q_1, ..., q_r (r >= 1).
class PointSet {
public:
  PointSet() = default;
  explicit PointSet(std::vector<Rat> points) : points_(std::move(points)) {
    if (points_.empty())
      throw InvalidPoints("point set is empty");
    std::set<Rat> seen;
    for (const auto &q : points_)
      if (!seen.insert(q).second)
        throw InvalidPoints("point " + q.str() + " occurs more than once");
  }

  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] const Rat &operator[](std::size_t i) const { return points_.at(i); }
  [[nodiscard]] const std::vector<Rat> &points() const { return points_; }
  [[nodiscard]] bool contains(const Rat &q) const {
    return std::find(points_.begin(), points_.end(), q) != points_.end();
  }

  friend bool operator==(const PointSet &, const PointSet &) = default;

private:
  std::vector<Rat> points_;
};

/// Which field of the tower F <= F_0, F_i <= F_i° an object is meant to live in.
struct TowerTag {
  enum class Field { GlobalF, F0, Fi, FiCirc };
  Field which = Field::GlobalF;
  std::size_t index = 0; // meaningful for Fi / FiCirc
};

// ---------------------------------------------------------------------------
// Coefficient-level ring criteria.

/// Poles inside ps and bounded at infinity, i.e. an element of
/// Q[(x-q_1)^{-1}, ..., (x-q_r)^{-1}].
inline bool coeff_in_F0(const RatFunc<Rat> &c, const PointSet &ps) {
  if (c.num().degree() > c.den().degree())
    return false;
  Poly<Rat> rem = c.den();
  for (const Rat &q : ps.points()) {
    while (rem.degree() > 0) {
      Rat r;
      Poly<Rat> next = rem.divide_linear(q, r);
      if (!r.is_zero())
        break;
      rem = std::move(next);
    }
  }
  return rem.degree() <= 0;
}

template <class K> bool coeff_in_F0(const PartialFrac<K> &c, const PointSet &ps) {
  if (c.poly().degree() > 0)
    return false;
  for (const auto &kv : c.parts())
    if (!ps.contains(kv.first))
      return false;
  return true;
}

inline bool coeff_regular_at(const RatFunc<Rat> &c, const Rat &q) { return pole_free_at(c, q); }
template <class K> bool coeff_regular_at(const PartialFrac<K> &c, const Rat &q) {
  return c.pole_free_at(q);
}

/// Ring-level criterion for F_0: every stored coefficient lies in
/// Q[(x-q_1)^{-1}, ..., (x-q_r)^{-1}].
template <class C> bool in_F0_ring(const TSeries<C> &a, const PointSet &ps) {
  for (const auto &c : a.coeffs())
    if (!coeff_in_F0(c, ps))
      return false;
  return true;
}

/// Ring-level criterion for F_i: every stored coefficient is regular at q,
/// so a lies in Q[[x - q]][[t]] (up to a power of t).
template <class C> bool in_Fi_ring(const TSeries<C> &a, const Rat &q) {
  for (const auto &c : a.coeffs())
    if (!coeff_regular_at(c, q))
      return false;
  return true;
}

/// One-sided certificate that a lies in F = Q((t))(x): it passes both ring
/// criteria. A false answer is inconclusive, never a proof of non-membership.
template <class C>
bool lemma_schnitt_check(const TSeries<C> &a, const PointSet &ps, std::size_t i) {
  return in_F0_ring(a, ps) && in_Fi_ring(a, ps[i]);
}

// ---------------------------------------------------------------------------
// Reconstruction of elements of Q((t))(x) from truncated data.

template <class C> struct ReconstructionResult {
  bool success = false;
  TSeries<C> numerator;   // P(x, t): polynomial coefficients in x
  TSeries<C> denominator; // Q(x, t): polynomial coefficients in x
  int d_x_num = -1;
  int d_x_den = -1;
  int bound = 0; // the d_x bound that was tried
  int verified_order = 0;
};

namespace detail {

/// Dense exact linear system, reduced to row echelon form incrementally.
class RatSystem {
public:
  explicit RatSystem(std::size_t cols) : cols_(cols) {}

  /// Adds a row (coefficients, right-hand side). Returns false if the
  /// system became inconsistent.
  bool add(std::vector<Rat> row, Rat rhs) {
    reduce(row, rhs);
    std::size_t lead = 0;
    while (lead < cols_ && row[lead].is_zero())
      ++lead;
    if (lead == cols_) {
      if (!rhs.is_zero())
        consistent_ = false;
      return consistent_;
    }
    const Rat inv = row[lead].inverse();
    for (std::size_t j = lead; j < cols_; ++j)
      if (!row[j].is_zero())
        row[j] *= inv;
    rhs *= inv;
    pivots_.insert({lead, Row{std::move(row), std::move(rhs)}});
    return consistent_;
  }

  [[nodiscard]] bool consistent() const { return consistent_; }

  /// Particular solution with all free variables zero.
  [[nodiscard]] std::vector<Rat> solve() const {
    std::vector<Rat> x(cols_, Rat(0));
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const auto &[lead, row] = *it;
      Rat v = row.rhs;
      for (std::size_t j = lead + 1; j < cols_; ++j)
        if (!row.coeffs[j].is_zero() && !x[j].is_zero())
          v -= row.coeffs[j] * x[j];
      x[lead] = v;
    }
    return x;
  }

private:
  struct Row {
    std::vector<Rat> coeffs;
    Rat rhs;
  };

  void reduce(std::vector<Rat> &row, Rat &rhs) const {
    for (const auto &[lead, p] : pivots_) {
      if (row[lead].is_zero())
        continue;
      const Rat f = row[lead];
      for (std::size_t j = lead; j < cols_; ++j)
        if (!p.coeffs[j].is_zero())
          row[j] -= f * p.coeffs[j];
      rhs -= f * p.rhs;
    }
  }

  std::size_t cols_;
  std::map<std::size_t, Row> pivots_;
  bool consistent_ = true;
};

inline std::optional<Poly<Rat>> as_polynomial(const RatFunc<Rat> &c) {
  if (!c.is_polynomial())
    return std::nullopt;
  return c.num();
}
inline std::optional<Poly<Rat>> as_polynomial(const PartialFrac<Rat> &c) {
  if (!c.parts().empty())
    return std::nullopt;
  return c.poly();
}

/// Linear functionals whose joint vanishing on h means "h is a polynomial of
/// degree <= d". For num/den data: the remainder modulo the common
/// denominator D and the quotient coefficients above degree d.
class RatFuncConstraints {
public:
  RatFuncConstraints(const std::vector<RatFunc<Rat>> &b, int n, int d) : d_(d) {
    den_ = Poly<Rat>(Rat(1));
    for (int m = 0; m <= n; ++m) {
      const auto &den = b[static_cast<std::size_t>(m)].den();
      Poly<Rat> g = Poly<Rat>::gcd(den_, den);
      den_ = den_ * Poly<Rat>::divmod(den, g).first;
    }
  }
  /// Values on h = x^i * b_m.
  [[nodiscard]] std::vector<Rat> eval(const RatFunc<Rat> &bm, int i) const {
    Poly<Rat> base = bm.num() * Poly<Rat>::divmod(den_, bm.den()).first;
    base = base * Poly<Rat>::monomial(Rat(1), static_cast<std::size_t>(i));
    auto [quot, rem] = Poly<Rat>::divmod(base, den_);
    std::vector<Rat> out(static_cast<std::size_t>(den_.degree()), Rat(0));
    for (std::size_t j = 0; j < rem.coeffs().size(); ++j)
      out[j] = rem.coeffs()[j];
    for (long j = d_ + 1; j <= quot.degree(); ++j)
      out.push_back(quot[static_cast<std::size_t>(j)]);
    return out;
  }

private:
  int d_;
  Poly<Rat> den_;
};

} // namespace detail

/// Searches for P(x,t), Q(x,t) of x-degree <= d_x with Q(x, 0) monic of
/// minimal degree such that Q a == P mod t^N. All t-orders of Q are solved
/// as one exact system over Q, grown order by order; the residual is then
/// re-verified with series arithmetic. Deterministic in (a, d_x, N).
template <class C>
ReconstructionResult<C> reconstruct(const TSeries<C> &a, int d_x, int N) {
  if (d_x < 0)
    throw InvalidInput("reconstruct: negative degree bound");
  if (a.prec() < N)
    throw InsufficientPrecision("series known only modulo t^" + std::to_string(a.prec()) +
                                ", requested t^" + std::to_string(N));
  ReconstructionResult<C> res;
  res.bound = d_x;
  const TSeries<C> at = a.truncated(N);
  if (at.is_zero()) {
    res.success = true;
    res.numerator = TSeries<C>::zero(N);
    res.denominator = TSeries<C>(C(1L));
    res.d_x_num = -1;
    res.d_x_den = 0;
    res.verified_order = N;
    return res;
  }
  const int v = at.t_min();
  const int M = N - v; // available orders
  const int d1 = d_x + 1;
  if (M < 2 * d1)
    throw InsufficientPrecision("need at least " + std::to_string(2 * d1) +
                                " known t-orders for x-degree bound " + std::to_string(d_x) +
                                ", have " + std::to_string(M));
  std::vector<C> b;
  for (int n = 0; n < M; ++n)
    b.push_back(at.coeff(v + n));

  const std::size_t unknowns = static_cast<std::size_t>(M * d1);
  auto column = [d1](int k, int i) { return static_cast<std::size_t>(k * d1 + i); };

  detail::RatSystem sys(unknowns);
  for (int n = 0; n < M && sys.consistent(); ++n) {
    if constexpr (std::is_same_v<C, RatFunc<Rat>>) {
      detail::RatFuncConstraints cons(b, n, d_x);
      std::vector<std::vector<Rat>> cols;
      std::vector<std::size_t> idx;
      std::size_t len = 0;
      for (int k = 0; k <= n; ++k)
        for (int i = 0; i < d1; ++i) {
          cols.push_back(cons.eval(b[static_cast<std::size_t>(n - k)], i));
          idx.push_back(column(k, i));
          len = std::max(len, cols.back().size());
        }
      for (std::size_t r = 0; r < len && sys.consistent(); ++r) {
        std::vector<Rat> row(unknowns, Rat(0));
        bool any = false;
        for (std::size_t c = 0; c < cols.size(); ++c)
          if (r < cols[c].size() && !cols[c][r].is_zero()) {
            row[idx[c]] = cols[c][r];
            any = true;
          }
        if (any)
          sys.add(std::move(row), Rat(0));
      }
    } else {
      // Partial-fraction coordinates: collect values keyed by (point, order)
      // and by polynomial degree above the bound.
      std::map<std::pair<Rat, std::size_t>, std::vector<Rat>> rows;
      std::map<long, std::vector<Rat>> poly_rows;
      for (int k = 0; k <= n; ++k)
        for (int i = 0; i < d1; ++i) {
          const C &bm = b[static_cast<std::size_t>(n - k)];
          C h = bm * C(Poly<Rat>::monomial(Rat(1), static_cast<std::size_t>(i)));
          const std::size_t col = column(k, i);
          for (const auto &[q, c] : h.parts())
            for (std::size_t ord = 0; ord < c.size(); ++ord) {
              if (c[ord].is_zero())
                continue;
              auto &row = rows[{q, ord}];
              if (row.empty())
                row.assign(unknowns, Rat(0));
              row[col] = c[ord];
            }
          const auto &pc = h.poly().coeffs();
          for (long j = d_x + 1; j < static_cast<long>(pc.size()); ++j) {
            if (pc[static_cast<std::size_t>(j)].is_zero())
              continue;
            auto &row = poly_rows[j];
            if (row.empty())
              row.assign(unknowns, Rat(0));
            row[col] = pc[static_cast<std::size_t>(j)];
          }
        }
      for (auto &kv : rows)
        if (!sys.add(std::move(kv.second), Rat(0)))
          break;
      for (auto &kv : poly_rows)
        if (!sys.add(std::move(kv.second), Rat(0)))
          break;
    }
  }

  // Normalization: Q(x, 0) monic of the smallest possible degree e.
  std::optional<std::vector<Rat>> sol;
  for (int e = 0; e <= d_x && !sol; ++e) {
    detail::RatSystem trial = sys;
    std::vector<Rat> lead(unknowns, Rat(0));
    lead[column(0, e)] = Rat(1);
    trial.add(std::move(lead), Rat(1));
    for (int j = e + 1; j <= d_x && trial.consistent(); ++j) {
      std::vector<Rat> z(unknowns, Rat(0));
      z[column(0, j)] = Rat(1);
      trial.add(std::move(z), Rat(0));
    }
    if (trial.consistent())
      sol = trial.solve();
  }
  if (!sol)
    return res;

  std::vector<C> qc;
  for (int k = 0; k < M; ++k) {
    std::vector<Rat> pc(static_cast<std::size_t>(d1));
    for (int i = 0; i < d1; ++i)
      pc[static_cast<std::size_t>(i)] = (*sol)[column(k, i)];
    qc.emplace_back(Poly<Rat>(std::move(pc)));
  }
  TSeries<C> Q(0, std::move(qc), kExact);
  // P_n = sum_k Q_k b_{n-k} must be a polynomial of degree <= d_x.
  std::vector<C> pcoef;
  int pdeg = -1;
  for (int n = 0; n < M; ++n) {
    C h(0L);
    for (int k = 0; k <= n; ++k) {
      const C qk = Q.coeff(k);
      if (!qk.is_zero())
        h += qk * b[static_cast<std::size_t>(n - k)];
    }
    auto p = detail::as_polynomial(h);
    if (!p || p->degree() > d_x)
      return res;
    pdeg = std::max<int>(pdeg, static_cast<int>(p->degree()));
    pcoef.push_back(std::move(h));
  }
  TSeries<C> P(v, std::move(pcoef), N);
  // Independent residual check through series arithmetic.
  if (!zero_mod(Q * a - P, N))
    return res;
  int qdeg = -1;
  for (const auto &c : Q.coeffs())
    qdeg = std::max<int>(qdeg, static_cast<int>(detail::as_polynomial(c)->degree()));
  res.success = true;
  res.numerator = std::move(P);
  res.denominator = std::move(Q);
  res.d_x_num = pdeg;
  res.d_x_den = qdeg;
  res.verified_order = N;
  return res;
}

/// Degree schedule d_x = 1, 2, 4, 8, each tried only when at least
/// 2 (d_x + 1) + 4 t-orders are known. Returns the first certificate, or the
/// last failed attempt ("inconclusive at bounds").
template <class C> ReconstructionResult<C> reconstruct_schedule(const TSeries<C> &a, int N) {
  ReconstructionResult<C> last;
  last.verified_order = 0;
  const int v = a.truncated(N).is_zero() ? 0 : a.t_min();
  for (int d : {1, 2, 4, 8}) {
    if (N - v < 2 * (d + 1) + 4)
      break;
    last = reconstruct(a, d, N);
    if (last.success)
      return last;
  }
  return last;
}

} // namespace ppv
