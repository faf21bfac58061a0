#pragma once

#include <concepts>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ppv/error.hpp"
#include "ppv/exact/poly.hpp"
#include "ppv/exact/rat.hpp"

namespace ppv {

/// Rational function num/den over the field K in one variable x.
///
/// Canonical form: den is monic, gcd(num, den) = 1, and zero is 0/1, so
/// structural equality coincides with value equality. K may itself be a
/// RatFunc, which is how formal constants (a Galois parameter, or t when
/// working over Q(t)) are adjoined.
template <class K> class RatFunc {
public:
  using field_type = K;
  using poly_type = Poly<K>;

  RatFunc() : den_(K(1)) {}
  RatFunc(long v) : num_(K(v)), den_(K(1)) {}
  RatFunc(int v) : RatFunc(static_cast<long>(v)) {}
  RatFunc(const K &c) : num_(c), den_(K(1)) {}
  RatFunc(const Rat &r)
    requires(!std::same_as<K, Rat>)
      : num_(K(r)), den_(K(1)) {}
  RatFunc(Poly<K> p) : num_(std::move(p)), den_(K(1)) {}
  RatFunc(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero())
      throw DivByZero("rational function with zero denominator");
    normalize();
  }

  /// Wraps num/den that are already coprime with den monic (no gcd work).
  static RatFunc from_canonical(Poly<K> num, Poly<K> den) {
    RatFunc r;
    if (num.is_zero())
      return r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }

  static RatFunc x() { return RatFunc(Poly<K>::x()); }
  /// 1 / (x - q)^e
  static RatFunc pole(const K &q, std::size_t e = 1) {
    RatFunc r;
    r.num_ = Poly<K>(K(1));
    r.den_ = Poly<K>::linear_power(q, e);
    return r;
  }
  /// coeff / (x - q)^e
  static RatFunc pole(const K &q, std::size_t e, const K &coeff) {
    if (coeff.is_zero())
      return {};
    RatFunc r = pole(q, e);
    r.num_ = Poly<K>(coeff);
    return r;
  }

  [[nodiscard]] const Poly<K> &num() const { return num_; }
  [[nodiscard]] const Poly<K> &den() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  [[nodiscard]] bool is_polynomial() const { return den_.degree() == 0; }
  [[nodiscard]] bool is_constant() const {
    return is_polynomial() && num_.degree() <= 0;
  }
  [[nodiscard]] K constant_value() const { return num_[0]; }

  [[nodiscard]] RatFunc inverse() const {
    if (is_zero())
      throw DivByZero("inverse of zero rational function");
    RatFunc r;
    K l = num_.lead().inverse();
    r.num_ = den_ * l;
    r.den_ = num_ * l;
    return r;
  }

  /// Formal derivative d/dx (elements of K are constants).
  [[nodiscard]] RatFunc dx() const {
    if (is_polynomial())
      return RatFunc(num_.derivative());
    // (n/d)' = (n' d - n d') / d^2; with g = gcd(d, d') the fraction
    // reduces to (n' (d/g) - n (d'/g)) / (d * d/g).
    Poly<K> dprime = den_.derivative();
    Poly<K> g = Poly<K>::gcd(den_, dprime);
    Poly<K> dg = Poly<K>::divmod(den_, g).first;
    Poly<K> dpg = Poly<K>::divmod(dprime, g).first;
    return RatFunc(num_.derivative() * dg - num_ * dpg, den_ * dg);
  }

  RatFunc &operator+=(const RatFunc &o) { return *this = *this + o; }
  RatFunc &operator-=(const RatFunc &o) { return *this = *this - o; }
  RatFunc &operator*=(const RatFunc &o) { return *this = *this * o; }
  RatFunc &operator/=(const RatFunc &o) { return *this = *this / o; }

  friend RatFunc operator+(const RatFunc &a, const RatFunc &b) {
    return add(a, b, false);
  }
  friend RatFunc operator-(const RatFunc &a, const RatFunc &b) {
    return add(a, b, true);
  }
  friend RatFunc operator-(RatFunc a) {
    a.num_ = -a.num_;
    return a;
  }
  friend RatFunc operator*(const RatFunc &a, const RatFunc &b) {
    if (a.is_zero() || b.is_zero())
      return {};
    if (a.is_polynomial() && b.is_polynomial())
      return RatFunc(a.num_ * b.num_);
    Poly<K> g1 = Poly<K>::gcd(a.num_, b.den_);
    Poly<K> g2 = Poly<K>::gcd(b.num_, a.den_);
    RatFunc r;
    r.num_ = Poly<K>::divmod(a.num_, g1).first * Poly<K>::divmod(b.num_, g2).first;
    r.den_ = Poly<K>::divmod(a.den_, g2).first * Poly<K>::divmod(b.den_, g1).first;
    r.make_monic();
    return r;
  }
  friend RatFunc operator/(const RatFunc &a, const RatFunc &b) {
    if (b.is_zero())
      throw DivByZero("rational function division by zero");
    return a * b.inverse();
  }

  friend bool operator==(const RatFunc &a, const RatFunc &b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  [[nodiscard]] std::string to_string(const std::string &var = "x") const {
    if (is_polynomial())
      return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
  }
  friend std::ostream &operator<<(std::ostream &os, const RatFunc &r) {
    return os << r.to_string();
  }

private:
  static RatFunc add(const RatFunc &a, const RatFunc &b, bool subtract) {
    if (b.is_zero())
      return a;
    if (a.is_zero())
      return subtract ? -b : b;
    if (a.den_ == b.den_) {
      Poly<K> n = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
      if (a.is_polynomial())
        return RatFunc(std::move(n));
      return RatFunc(std::move(n), a.den_);
    }
    Poly<K> g = Poly<K>::gcd(a.den_, b.den_);
    Poly<K> ad = Poly<K>::divmod(a.den_, g).first;
    Poly<K> bd = Poly<K>::divmod(b.den_, g).first;
    Poly<K> n = subtract ? a.num_ * bd - b.num_ * ad : a.num_ * bd + b.num_ * ad;
    RatFunc r;
    if (n.is_zero())
      return r;
    // Only factors of g can cancel.
    Poly<K> h = Poly<K>::gcd(n, g);
    r.num_ = Poly<K>::divmod(n, h).first;
    r.den_ = Poly<K>::divmod(a.den_, h).first * bd;
    r.make_monic();
    return r;
  }

  void make_monic() {
    if (!den_.is_monic()) {
      K l = den_.lead().inverse();
      num_ = num_ * l;
      den_ = den_ * l;
    }
  }

  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly<K>(K(1));
      return;
    }
    Poly<K> g = Poly<K>::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = Poly<K>::divmod(num_, g).first;
      den_ = Poly<K>::divmod(den_, g).first;
    }
    make_monic();
  }

  Poly<K> num_;
  Poly<K> den_;
};

/// Laurent coefficients sum_j coeffs[j - low] (x - q)^j.
template <class K> struct Laurent {
  long low = 0;
  std::vector<K> coeffs;

  [[nodiscard]] K at(long j) const {
    if (j < low || j >= low + static_cast<long>(coeffs.size()))
      return K(0);
    return coeffs[static_cast<std::size_t>(j - low)];
  }
};

/// Principal part at q: coeffs[k-1] multiplies (x - q)^{-k}.
template <class K> struct PrincipalPart {
  K point;
  std::vector<K> coeffs;

  [[nodiscard]] RatFunc<K> as_ratfunc() const {
    const std::size_t m = coeffs.size();
    if (m == 0)
      return {};
    std::vector<K> num(m);
    // sum_k c_k (x-q)^{m-k} expressed in powers of (x - q), then shifted.
    for (std::size_t k = 1; k <= m; ++k)
      num[m - k] = coeffs[k - 1];
    Poly<K> n = Poly<K>(std::move(num)).shift(-point);
    return RatFunc<K>(std::move(n), Poly<K>::linear_power(point, m));
  }
};

template <class K> struct PartialFractionResult {
  std::vector<PrincipalPart<K>> parts; // one per requested point, in order
  RatFunc<K> rest;
};

// ---------------------------------------------------------------------------
// Free operations on rational functions.

template <class K> RatFunc<K> rf_dx(const RatFunc<K> &a) { return a.dx(); }

/// True iff the denominator does not vanish at q.
template <class K> bool pole_free_at(const RatFunc<K> &a, const K &q) {
  return !a.den().eval(q).is_zero();
}

template <class K> std::size_t pole_order(const RatFunc<K> &a, const K &q) {
  return a.den().multiplicity(q);
}

/// Power-series quotient of two Taylor coefficient lists, u / w with w[0] != 0.
template <class K>
std::vector<K> series_divide(const std::vector<K> &u, const std::vector<K> &w,
                             std::size_t count) {
  std::vector<K> s(count, K(0));
  const K inv = w.at(0).inverse();
  for (std::size_t n = 0; n < count; ++n) {
    K acc = n < u.size() ? u[n] : K(0);
    for (std::size_t j = 1; j <= n && j < w.size(); ++j)
      if (!w[j].is_zero() && !s[n - j].is_zero())
        acc -= w[j] * s[n - j];
    s[n] = acc * inv;
  }
  return s;
}

/// Exact Laurent expansion of a at q for exponents -pole_order .. order.
template <class K>
Laurent<K> expand_at(const RatFunc<K> &a, const K &q, long order) {
  const std::size_t m = pole_order(a, q);
  Laurent<K> out;
  out.low = -static_cast<long>(m);
  if (order < out.low)
    throw InvalidInput("expand_at: order below the pole order");
  const auto count = static_cast<std::size_t>(order - out.low + 1);
  Poly<K> w = a.den();
  for (std::size_t i = 0; i < m; ++i) {
    K r;
    w = w.divide_linear(q, r);
  }
  out.coeffs = series_divide(a.num().taylor_at(q, count), w.taylor_at(q, count), count);
  return out;
}

/// Coefficient of (x - q)^{-1} in the Laurent expansion at q.
template <class K> K residue(const RatFunc<K> &a, const K &q) {
  if (pole_order(a, q) == 0)
    return K(0);
  return expand_at(a, q, -1).at(-1);
}

template <class K>
PrincipalPart<K> principal_part(const RatFunc<K> &a, const K &q) {
  PrincipalPart<K> pp{q, {}};
  const std::size_t m = pole_order(a, q);
  if (m == 0)
    return pp;
  Laurent<K> l = expand_at(a, q, -1);
  pp.coeffs.resize(m);
  for (std::size_t k = 1; k <= m; ++k)
    pp.coeffs[k - 1] = l.at(-static_cast<long>(k));
  return pp;
}

/// a = sum of principal parts at `points` + rest, rest regular at every point.
template <class K>
PartialFractionResult<K> partial_fractions(const RatFunc<K> &a,
                                           const std::vector<K> &points) {
  PartialFractionResult<K> out;
  out.rest = a;
  for (const K &q : points) {
    out.parts.push_back(principal_part(a, q));
    out.rest -= out.parts.back().as_ratfunc();
  }
  return out;
}

} // namespace ppv
