#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ppv/error.hpp"
#include "ppv/exact/rat.hpp"

namespace ppv {

/// Dense univariate polynomial over a field K, coefficients stored from
/// low to high degree. The zero polynomial has no coefficients.
template <class K> class Poly {
public:
  using coeff_type = K;

  Poly() = default;
  Poly(K constant) {
    if (!constant.is_zero())
      c_.push_back(std::move(constant));
  }
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly x() { return Poly(std::vector<K>{K(0), K(1)}); }
  static Poly monomial(K coeff, std::size_t deg) {
    std::vector<K> c(deg + 1);
    c[deg] = std::move(coeff);
    return Poly(std::move(c));
  }
  /// x - q
  static Poly linear(const K &q) { return Poly(std::vector<K>{-q, K(1)}); }
  /// (x - q)^e
  static Poly linear_power(const K &q, std::size_t e) {
    std::vector<K> c(e + 1);
    K negq = -q;
    for (std::size_t k = 0; k <= e; ++k)
      c[k] = K(binomial(static_cast<long>(e), static_cast<long>(k))) *
             power(negq, e - k);
    return Poly(std::move(c));
  }

  [[nodiscard]] long degree() const { return static_cast<long>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] bool is_constant() const { return c_.size() <= 1; }
  [[nodiscard]] const std::vector<K> &coeffs() const { return c_; }
  [[nodiscard]] const K &lead() const { return c_.back(); }
  [[nodiscard]] K operator[](std::size_t i) const {
    return i < c_.size() ? c_[i] : K(0);
  }
  [[nodiscard]] bool is_monic() const { return !c_.empty() && c_.back() == K(1); }

  [[nodiscard]] Poly monic() const {
    if (is_zero() || is_monic())
      return *this;
    K inv = lead().inverse();
    return *this * inv;
  }

  [[nodiscard]] K eval(const K &at) const {
    K r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      r = r * at + *it;
    return r;
  }

  [[nodiscard]] Poly derivative() const {
    if (c_.size() <= 1)
      return {};
    std::vector<K> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      d[i - 1] = K(static_cast<long>(i)) * c_[i];
    return Poly(std::move(d));
  }

  /// Divides by (x - q); returns quotient and writes the remainder p(q).
  [[nodiscard]] Poly divide_linear(const K &q, K &remainder) const {
    if (c_.empty()) {
      remainder = K(0);
      return {};
    }
    std::vector<K> out(c_.size() - 1);
    K acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = acc * q + c_[i];
      if (i > 0)
        out[i - 1] = acc;
    }
    remainder = acc;
    return Poly(std::move(out));
  }

  /// Multiplicity of q as a root (0 for the zero polynomial).
  [[nodiscard]] std::size_t multiplicity(const K &q) const {
    std::size_t m = 0;
    Poly p = *this;
    while (!p.is_zero()) {
      K r;
      Poly next = p.divide_linear(q, r);
      if (!r.is_zero())
        break;
      p = std::move(next);
      ++m;
    }
    return m;
  }

  /// First `count` Taylor coefficients at q: p = sum_j out[j] (x - q)^j.
  [[nodiscard]] std::vector<K> taylor_at(const K &q, std::size_t count) const {
    std::vector<K> out;
    out.reserve(count);
    Poly p = *this;
    for (std::size_t j = 0; j < count; ++j) {
      if (p.is_zero()) {
        out.resize(count, K(0));
        break;
      }
      K r;
      p = p.divide_linear(q, r);
      out.push_back(std::move(r));
    }
    return out;
  }

  /// p(x + s) by synthetic Horner (Taylor shift).
  [[nodiscard]] Poly shift(const K &s) const {
    std::vector<K> a = c_;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j)
        a[j - 1] += a[j] * s;
    return Poly(std::move(a));
  }

  /// Euclidean division. Throws DivByZero if d is zero.
  static std::pair<Poly, Poly> divmod(const Poly &a, const Poly &d) {
    if (d.is_zero())
      throw DivByZero("polynomial division by zero");
    if (a.degree() < d.degree())
      return {Poly{}, a};
    std::vector<K> r = a.c_;
    std::vector<K> q(static_cast<std::size_t>(a.degree() - d.degree() + 1));
    const K inv = d.lead().inverse();
    const bool monic = d.lead() == K(1);
    const std::size_t dd = d.c_.size() - 1;
    for (std::size_t i = r.size(); i-- > dd;) {
      if (r[i].is_zero())
        continue;
      K f = monic ? r[i] : r[i] * inv;
      const std::size_t s = i - dd;
      for (std::size_t k = 0; k < dd; ++k)
        if (!d.c_[k].is_zero())
          r[s + k] -= f * d.c_[k];
      r[i] = K(0);
      q[s] = std::move(f);
    }
    r.resize(dd);
    return {Poly(std::move(q)), Poly(std::move(r))};
  }

  /// Monic greatest common divisor; gcd(0, 0) = 0.
  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = r.monic();
    }
    return a.monic();
  }

  Poly &operator+=(const Poly &o) {
    if (o.c_.size() > c_.size())
      c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i)
      c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly &operator-=(const Poly &o) {
    if (o.c_.size() > c_.size())
      c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i)
      c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto &x : a.c_)
      x = -x;
    return a;
  }
  friend Poly operator*(const Poly &a, const Poly &b) {
    if (a.is_zero() || b.is_zero())
      return {};
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero())
        continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        if (!b.c_[j].is_zero())
          r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  friend Poly operator*(Poly a, const K &s) {
    if (s.is_zero())
      return {};
    for (auto &x : a.c_)
      x *= s;
    return a;
  }
  Poly &operator*=(const Poly &o) { return *this = *this * o; }

  friend bool operator==(const Poly &a, const Poly &b) { return a.c_ == b.c_; }

  [[nodiscard]] std::string to_string(const std::string &var = "x") const {
    if (c_.empty())
      return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero())
        continue;
      if (!first)
        os << " + ";
      first = false;
      os << "(" << c_[i] << ")";
      if (i == 1)
        os << "*" << var;
      else if (i > 1)
        os << "*" << var << "^" << i;
    }
    return os.str();
  }
  friend std::ostream &operator<<(std::ostream &os, const Poly &p) {
    return os << p.to_string();
  }

  static K power(const K &b, std::size_t e) {
    K r(1), base = b;
    while (e) {
      if (e & 1)
        r *= base;
      e >>= 1;
      if (e)
        base *= base;
    }
    return r;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero())
      c_.pop_back();
  }

  std::vector<K> c_;
};

} // namespace ppv
