#pragma once

#include <algorithm>
#include <climits>
#include <cstddef>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "ppv/error.hpp"
#include "ppv/exact/rat.hpp"

namespace ppv {

/// Precision value meaning "known exactly" (a Laurent polynomial in t).
inline constexpr int kExact = INT_MAX / 4;

namespace detail {
inline int prec_add(int p, int v) {
  if (p >= kExact || v >= kExact)
    return kExact;
  return std::min(p + v, kExact);
}
} // namespace detail

/// Truncated Laurent series in t with coefficients in C:
/// sum_{n = t_min}^{t_min + len - 1} c_n t^n, trusted modulo t^prec.
///
/// Stored coefficients are trimmed on both ends. A series with no stored
/// coefficients is zero up to its precision and has t_min == prec.
template <class C> class TSeries {
public:
  using coeff_type = C;

  /// Exact zero.
  TSeries() = default;
  TSeries(long v) : TSeries(C(v)) {}
  TSeries(int v) : TSeries(C(static_cast<long>(v))) {}
  explicit TSeries(C constant, int prec = kExact) : TSeries(0, {std::move(constant)}, prec) {}
  TSeries(int t_min, std::vector<C> coeffs, int prec)
      : t_min_(t_min), c_(std::move(coeffs)), prec_(prec) {
    normalize();
  }

  static TSeries zero(int prec = kExact) { return TSeries(prec, {}, prec); }
  static TSeries monomial(C coeff, int exponent, int prec = kExact) {
    return TSeries(exponent, {std::move(coeff)}, prec);
  }
  /// The series t (exact).
  static TSeries t(int power = 1) { return monomial(C(1L), power); }

  [[nodiscard]] int t_min() const { return t_min_; }
  [[nodiscard]] int prec() const { return prec_; }
  [[nodiscard]] bool is_exact() const { return prec_ >= kExact; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] const std::vector<C> &coeffs() const { return c_; }
  /// Highest stored exponent + 1 (equals t_min for zero).
  [[nodiscard]] int t_end() const { return t_min_ + static_cast<int>(c_.size()); }

  /// Coefficient of t^n; zero outside the stored range.
  [[nodiscard]] C coeff(int n) const {
    if (n < t_min_ || n >= t_end())
      return C(0L);
    return c_[static_cast<std::size_t>(n - t_min_)];
  }
  [[nodiscard]] const C &leading() const {
    if (c_.empty())
      throw ZeroLeadingTerm("series is zero up to its precision");
    return c_.front();
  }

  [[nodiscard]] TSeries truncated(int prec) const {
    if (prec >= prec_)
      return *this;
    TSeries r = *this;
    r.prec_ = prec;
    r.normalize();
    return r;
  }

  /// Multiplication by t^k.
  [[nodiscard]] TSeries shifted(int k) const {
    TSeries r = *this;
    r.t_min_ = is_zero() ? r.t_min_ : r.t_min_ + k;
    r.prec_ = detail::prec_add(prec_, k);
    if (r.is_zero())
      r.t_min_ = r.prec_;
    return r;
  }

  template <class F> [[nodiscard]] auto map_coeffs(F &&f) const {
    using D = decltype(f(std::declval<const C &>()));
    std::vector<D> out;
    out.reserve(c_.size());
    for (const auto &c : c_)
      out.push_back(f(c));
    return TSeries<D>(t_min_, std::move(out), prec_);
  }

  /// d/dx applied coefficient-wise; precision unchanged.
  [[nodiscard]] TSeries dx() const {
    return map_coeffs([](const C &c) { return c.dx(); });
  }

  /// d/dt; the precision drops by one.
  [[nodiscard]] TSeries dt() const {
    std::vector<C> out;
    out.reserve(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const long n = t_min_ + static_cast<long>(i);
      out.push_back(n == 0 ? C(0L) : C(n) * c_[i]);
    }
    const int p = is_exact() ? kExact : prec_ - 1;
    return TSeries(t_min_ - 1, std::move(out), p);
  }

  /// Multiplicative inverse. Relative precision is preserved, so the
  /// result has t_min = -t_min and prec = prec - 2 t_min. An exact input
  /// with more than one term has an infinite inverse and needs `cap`.
  [[nodiscard]] TSeries inverse(std::optional<int> cap = std::nullopt) const {
    if (is_zero())
      throw ZeroLeadingTerm("inverse of a series that is zero up to t^" +
                            std::to_string(prec_));
    const int v = t_min_;
    C b0 = c_.front().inverse();
    if (is_exact() && c_.size() == 1 && !cap)
      return TSeries(-v, {std::move(b0)}, kExact);
    int out_prec;
    if (is_exact()) {
      if (!cap)
        throw InvalidInput("inverse of an exact multi-term series needs a precision cap");
      out_prec = *cap;
    } else {
      out_prec = prec_ - 2 * v;
      if (cap)
        out_prec = std::min(out_prec, *cap);
    }
    const int count = out_prec + v; // number of coefficients from t^{-v}
    std::vector<C> b;
    if (count > 0) {
      b.reserve(static_cast<std::size_t>(count));
      b.push_back(b0);
      for (int n = 1; n < count; ++n) {
        C acc(0L);
        for (int j = 1; j <= n && j < static_cast<int>(c_.size()); ++j) {
          const C &aj = c_[static_cast<std::size_t>(j)];
          const C &bk = b[static_cast<std::size_t>(n - j)];
          if (!aj.is_zero() && !bk.is_zero())
            acc += aj * bk;
        }
        b.push_back(acc.is_zero() ? C(0L) : -(b0 * acc));
      }
    }
    return TSeries(-v, std::move(b), out_prec);
  }

  TSeries &operator+=(const TSeries &o) { return *this = add(*this, o, false); }
  TSeries &operator-=(const TSeries &o) { return *this = add(*this, o, true); }
  TSeries &operator*=(const TSeries &o) { return *this = *this * o; }

  friend TSeries operator+(const TSeries &a, const TSeries &b) { return add(a, b, false); }
  friend TSeries operator-(const TSeries &a, const TSeries &b) { return add(a, b, true); }
  friend TSeries operator-(TSeries a) {
    for (auto &c : a.c_)
      c = -c;
    return a;
  }

  friend TSeries operator*(const TSeries &a, const TSeries &b) {
    const int p = std::min(detail::prec_add(a.prec_, b.t_min_),
                           detail::prec_add(b.prec_, a.t_min_));
    if (a.is_zero() || b.is_zero())
      return zero(p);
    const int t0 = a.t_min_ + b.t_min_;
    const long full = static_cast<long>(a.c_.size() + b.c_.size()) - 1;
    const long len = std::min<long>(full, static_cast<long>(p) - t0);
    if (len <= 0)
      return zero(p);
    std::vector<C> out(static_cast<std::size_t>(len), C(0L));
    for (std::size_t i = 0; i < a.c_.size() && static_cast<long>(i) < len; ++i) {
      if (a.c_[i].is_zero())
        continue;
      for (std::size_t j = 0; j < b.c_.size() && static_cast<long>(i + j) < len; ++j)
        if (!b.c_[j].is_zero())
          out[i + j] += a.c_[i] * b.c_[j];
    }
    return TSeries(t0, std::move(out), p);
  }
  friend TSeries operator*(TSeries a, const C &s) {
    if (s.is_zero())
      return zero(a.prec_ >= kExact ? kExact : a.prec_);
    for (auto &c : a.c_)
      c = c * s;
    return a;
  }
  friend TSeries operator*(const C &s, TSeries a) { return std::move(a) * s; }

  /// Structural equality (same stored data and precision).
  friend bool operator==(const TSeries &a, const TSeries &b) {
    return a.t_min_ == b.t_min_ && a.prec_ == b.prec_ && a.c_ == b.c_;
  }

  friend std::ostream &operator<<(std::ostream &os, const TSeries &s) {
    if (s.is_zero())
      os << "0";
    for (std::size_t i = 0; i < s.c_.size(); ++i) {
      if (s.c_[i].is_zero())
        continue;
      os << (i ? " + " : "") << "(" << s.c_[i] << ")*t^" << (s.t_min_ + static_cast<int>(i));
    }
    if (!s.is_exact())
      os << " + O(t^" << s.prec_ << ")";
    return os;
  }

private:
  static TSeries add(const TSeries &a, const TSeries &b, bool subtract) {
    const int p = std::min(a.prec_, b.prec_);
    if (b.is_zero())
      return a.truncated(p);
    if (a.is_zero()) {
      TSeries r = subtract ? -b : b;
      return r.truncated(p);
    }
    const int lo = std::min(a.t_min_, b.t_min_);
    const int hi = std::min(std::max(a.t_end(), b.t_end()), p);
    if (hi <= lo)
      return zero(p);
    std::vector<C> out(static_cast<std::size_t>(hi - lo), C(0L));
    for (int n = a.t_min_; n < a.t_end() && n < hi; ++n)
      out[static_cast<std::size_t>(n - lo)] = a.c_[static_cast<std::size_t>(n - a.t_min_)];
    for (int n = b.t_min_; n < b.t_end() && n < hi; ++n) {
      auto &dst = out[static_cast<std::size_t>(n - lo)];
      const auto &src = b.c_[static_cast<std::size_t>(n - b.t_min_)];
      if (subtract)
        dst -= src;
      else
        dst += src;
    }
    return TSeries(lo, std::move(out), p);
  }

  void normalize() {
    if (!is_exact() && t_end() > prec_) {
      const int keep = std::max(0, prec_ - t_min_);
      c_.resize(static_cast<std::size_t>(keep));
    }
    while (!c_.empty() && c_.back().is_zero())
      c_.pop_back();
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero())
      ++lead;
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
      t_min_ += static_cast<int>(lead);
    }
    if (c_.empty())
      t_min_ = prec_;
  }

  int t_min_ = kExact;
  std::vector<C> c_;
  int prec_ = kExact;
};

// ---------------------------------------------------------------------------

template <class C> TSeries<C> ts_add(const TSeries<C> &a, const TSeries<C> &b) { return a + b; }
template <class C> TSeries<C> ts_sub(const TSeries<C> &a, const TSeries<C> &b) { return a - b; }
template <class C> TSeries<C> ts_mul(const TSeries<C> &a, const TSeries<C> &b) { return a * b; }
template <class C>
TSeries<C> ts_inv(const TSeries<C> &a, std::optional<int> cap = std::nullopt) {
  return a.inverse(cap);
}
template <class C> TSeries<C> ts_dx(const TSeries<C> &a) { return a.dx(); }
template <class C> TSeries<C> ts_dt(const TSeries<C> &a) { return a.dt(); }

/// True iff a and b agree modulo t^min(prec_a, prec_b).
template <class C> bool agrees(const TSeries<C> &a, const TSeries<C> &b) {
  const int p = std::min(a.prec(), b.prec());
  return (a - b).truncated(p).is_zero();
}

/// Residual check: a is zero modulo t^order (requires prec >= order).
template <class C> bool zero_mod(const TSeries<C> &a, int order) {
  return a.prec() >= order && a.truncated(order).is_zero();
}

/// t-expansion of 1/(x - q + c t) to precision N:
/// sum_{n=0}^{N-1} (-c)^n t^n / (x - q)^{n+1}. With c = 0 the exact
/// constant series 1/(x - q).
template <class C>
TSeries<C> ts_shifted_pole(const Rat &q, const Rat &c, int N) {
  if (c.is_zero())
    return TSeries<C>(C::pole(q, 1, typename C::field_type(1L)));
  std::vector<C> out;
  out.reserve(static_cast<std::size_t>(std::max(N, 0)));
  Rat w(1);
  const Rat negc = -c;
  for (int n = 0; n < N; ++n) {
    out.push_back(C::pole(q, static_cast<std::size_t>(n + 1), typename C::field_type(w)));
    w *= negc;
  }
  return TSeries<C>(0, std::move(out), N);
}

} // namespace ppv
