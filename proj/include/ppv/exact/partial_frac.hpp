#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ppv/error.hpp"
#include "ppv/exact/poly.hpp"
#include "ppv/exact/rat.hpp"
#include "ppv/exact/ratfunc.hpp"

namespace ppv {

namespace detail {

/// C(n, k) from a grow-only Pascal table.
inline const Rat &pascal(std::size_t n, std::size_t k) {
  static std::vector<std::vector<Rat>> rows{{Rat(1)}};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (rows.size() <= n) {
    const auto &prev = rows.back();
    std::vector<Rat> row(prev.size() + 1, Rat(1));
    for (std::size_t i = 1; i + 1 < row.size(); ++i)
      row[i] = prev[i - 1] + prev[i];
    rows.push_back(std::move(row));
  }
  return rows[n][k];
}

} // namespace detail

/// A rational function over K whose poles sit at rational points, stored in
/// partial-fraction form: a polynomial part plus, per point q, the principal
/// part sum_k c_k (x - q)^{-k}.
///
/// This is the working representation for the ring
/// K[(x - q_1)^{-1}, ..., (x - q_r)^{-1}] (plus polynomials): the
/// representation is canonical, membership questions are lookups, and
/// products are computed pole-by-pole without polynomial gcds.
template <class K> class PartialFrac {
public:
  using field_type = K;
  using parts_type = std::map<Rat, std::vector<K>>;

  PartialFrac() = default;
  PartialFrac(long v) : poly_(K(v)) {}
  PartialFrac(int v) : PartialFrac(static_cast<long>(v)) {}
  PartialFrac(const K &c) : poly_(c) {}
  PartialFrac(const Rat &r)
    requires(!std::same_as<K, Rat>)
      : poly_(K(r)) {}
  PartialFrac(Poly<K> p) : poly_(std::move(p)) {}

  /// coeff * (x - q)^{-order}
  static PartialFrac pole(const Rat &q, std::size_t order, K coeff = K(1)) {
    PartialFrac r;
    if (order == 0) {
      r.poly_ = Poly<K>(std::move(coeff));
      return r;
    }
    if (coeff.is_zero())
      return r;
    std::vector<K> c(order, K(0));
    c[order - 1] = std::move(coeff);
    r.parts_.emplace(q, std::move(c));
    return r;
  }

  static PartialFrac x() { return PartialFrac(Poly<K>::x()); }

  [[nodiscard]] const Poly<K> &poly() const { return poly_; }
  [[nodiscard]] const parts_type &parts() const { return parts_; }

  [[nodiscard]] bool is_zero() const { return poly_.is_zero() && parts_.empty(); }
  [[nodiscard]] bool is_constant() const { return parts_.empty() && poly_.degree() <= 0; }
  [[nodiscard]] K constant_value() const { return poly_[0]; }

  [[nodiscard]] bool pole_free_at(const Rat &q) const { return !parts_.contains(q); }
  [[nodiscard]] std::size_t pole_order(const Rat &q) const {
    auto it = parts_.find(q);
    return it == parts_.end() ? 0 : it->second.size();
  }
  /// Coefficients of (x - q)^{-k}, k = 1..order, at index k-1.
  [[nodiscard]] std::vector<K> principal_part(const Rat &q) const {
    auto it = parts_.find(q);
    return it == parts_.end() ? std::vector<K>{} : it->second;
  }
  [[nodiscard]] K residue(const Rat &q) const {
    auto it = parts_.find(q);
    return it == parts_.end() ? K(0) : it->second.front();
  }
  [[nodiscard]] PartialFrac principal_part_fn(const Rat &q) const {
    PartialFrac r;
    auto it = parts_.find(q);
    if (it != parts_.end())
      r.parts_.emplace(q, it->second);
    return r;
  }
  /// Same function with the principal part at q removed.
  [[nodiscard]] PartialFrac without_pole(const Rat &q) const {
    PartialFrac r = *this;
    r.parts_.erase(q);
    return r;
  }

  [[nodiscard]] PartialFrac inverse() const {
    if (is_zero())
      throw DivByZero("inverse of zero");
    if (!is_constant())
      throw NotRepresentable("inverse of a non-constant partial fraction");
    return PartialFrac(poly_[0].inverse());
  }

  [[nodiscard]] PartialFrac dx() const {
    PartialFrac r;
    r.poly_ = poly_.derivative();
    for (const auto &[q, c] : parts_) {
      std::vector<K> d(c.size() + 1, K(0));
      for (std::size_t k = 1; k <= c.size(); ++k)
        d[k] = -(K(static_cast<long>(k)) * c[k - 1]);
      r.parts_.emplace(q, std::move(d));
    }
    return r;
  }

  /// First `count` Taylor coefficients at p of everything except the
  /// principal part at p itself.
  [[nodiscard]] std::vector<K> regular_taylor_at(const Rat &p, std::size_t count) const {
    std::vector<K> tau = poly_.is_zero() ? std::vector<K>(count, K(0))
                                         : poly_.taylor_at(K(p), count);
    for (const auto &[q, c] : parts_) {
      if (q == p)
        continue;
      add_pole_taylor(tau, c, p, q);
    }
    return tau;
  }

  /// Laurent expansion at p up to exponent `order` inclusive.
  [[nodiscard]] Laurent<K> expand_at(const Rat &p, long order) const {
    const std::size_t m = pole_order(p);
    Laurent<K> out;
    out.low = -static_cast<long>(m);
    if (order < out.low)
      throw InvalidInput("expand_at: order below the pole order");
    out.coeffs.assign(static_cast<std::size_t>(order - out.low + 1), K(0));
    auto it = parts_.find(p);
    for (std::size_t k = 1; k <= m; ++k)
      out.coeffs[m - k] = it->second[k - 1];
    if (order >= 0) {
      auto tau = regular_taylor_at(p, static_cast<std::size_t>(order + 1));
      for (std::size_t j = 0; j < tau.size(); ++j)
        out.coeffs[m + j] = tau[j];
    }
    return out;
  }

  PartialFrac &operator+=(const PartialFrac &o) {
    poly_ += o.poly_;
    for (const auto &[q, c] : o.parts_) {
      auto &mine = parts_[q];
      if (mine.size() < c.size())
        mine.resize(c.size(), K(0));
      for (std::size_t i = 0; i < c.size(); ++i)
        mine[i] += c[i];
      trim_at(q);
    }
    return *this;
  }
  PartialFrac &operator-=(const PartialFrac &o) {
    poly_ -= o.poly_;
    for (const auto &[q, c] : o.parts_) {
      auto &mine = parts_[q];
      if (mine.size() < c.size())
        mine.resize(c.size(), K(0));
      for (std::size_t i = 0; i < c.size(); ++i)
        mine[i] -= c[i];
      trim_at(q);
    }
    return *this;
  }
  PartialFrac &operator*=(const PartialFrac &o) { return *this = *this * o; }

  friend PartialFrac operator+(PartialFrac a, const PartialFrac &b) { return a += b; }
  friend PartialFrac operator-(PartialFrac a, const PartialFrac &b) { return a -= b; }
  friend PartialFrac operator-(PartialFrac a) {
    a.poly_ = -a.poly_;
    for (auto &[q, c] : a.parts_)
      for (auto &v : c)
        v = -v;
    return a;
  }

  friend PartialFrac operator*(const PartialFrac &a, const PartialFrac &b) {
    if (a.is_zero() || b.is_zero())
      return {};
    if (b.is_constant())
      return a.scaled(b.poly_[0]);
    if (a.is_constant())
      return b.scaled(a.poly_[0]);
    PartialFrac r;
    r.poly_ = a.poly_ * b.poly_;
    // Polynomial parts of (polynomial) x (principal part).
    r.poly_ += poly_times_parts_polynomial(a.poly_, b.parts_);
    r.poly_ += poly_times_parts_polynomial(b.poly_, a.parts_);

    std::vector<Rat> points;
    for (const auto &kv : a.parts_)
      points.push_back(kv.first);
    for (const auto &kv : b.parts_)
      if (!a.parts_.contains(kv.first))
        points.push_back(kv.first);

    for (const Rat &p : points) {
      auto ia = a.parts_.find(p);
      auto ib = b.parts_.find(p);
      const std::size_t ma = ia == a.parts_.end() ? 0 : ia->second.size();
      const std::size_t mb = ib == b.parts_.end() ? 0 : ib->second.size();
      std::vector<K> out(ma + mb, K(0));
      if (ma > 0) {
        auto tau = b.regular_taylor_at(p, ma);
        accumulate_principal(out, ia->second, tau);
      }
      if (mb > 0) {
        auto tau = a.regular_taylor_at(p, mb);
        accumulate_principal(out, ib->second, tau);
      }
      if (ma > 0 && mb > 0) {
        const auto &ca = ia->second;
        const auto &cb = ib->second;
        for (std::size_t i = 0; i < ma; ++i) {
          if (ca[i].is_zero())
            continue;
          for (std::size_t j = 0; j < mb; ++j)
            if (!cb[j].is_zero())
              out[i + j + 1] += ca[i] * cb[j];
        }
      }
      while (!out.empty() && out.back().is_zero())
        out.pop_back();
      if (!out.empty())
        r.parts_.emplace(p, std::move(out));
    }
    return r;
  }

  [[nodiscard]] PartialFrac scaled(const K &s) const {
    if (s.is_zero())
      return {};
    PartialFrac r = *this;
    r.poly_ = r.poly_ * s;
    for (auto &[q, c] : r.parts_)
      for (auto &v : c)
        v *= s;
    return r;
  }

  friend bool operator==(const PartialFrac &a, const PartialFrac &b) {
    return a.poly_ == b.poly_ && a.parts_ == b.parts_;
  }

  /// Combines into num/den; the result is canonical by construction.
  [[nodiscard]] RatFunc<K> to_ratfunc() const {
    if (parts_.empty())
      return RatFunc<K>(poly_);
    std::vector<Poly<K>> factors;
    std::vector<Poly<K>> numerators;
    for (const auto &[q, c] : parts_) {
      const std::size_t m = c.size();
      factors.push_back(Poly<K>::linear_power(K(q), m));
      std::vector<K> n(m);
      for (std::size_t k = 1; k <= m; ++k)
        n[m - k] = c[k - 1];
      numerators.push_back(Poly<K>(std::move(n)).shift(-K(q)));
    }
    const std::size_t r = factors.size();
    // prefix[i] = f_0 ... f_{i-1}, suffix[i] = f_i ... f_{r-1}
    std::vector<Poly<K>> prefix(r + 1, Poly<K>(K(1))), suffix(r + 1, Poly<K>(K(1)));
    for (std::size_t i = 0; i < r; ++i)
      prefix[i + 1] = prefix[i] * factors[i];
    for (std::size_t i = r; i-- > 0;)
      suffix[i] = suffix[i + 1] * factors[i];
    Poly<K> num = poly_ * prefix[r];
    for (std::size_t i = 0; i < r; ++i)
      num += numerators[i] * (prefix[i] * suffix[i + 1]);
    return RatFunc<K>::from_canonical(std::move(num), std::move(prefix[r]));
  }

  /// Decomposes a rational function whose poles all lie in `points`.
  /// Throws PoleOutsidePointSet otherwise.
  static PartialFrac from_ratfunc(const RatFunc<K> &f, const std::vector<Rat> &points) {
    PartialFrac r;
    Poly<K> rem = f.den();
    std::vector<std::pair<Rat, std::size_t>> orders;
    for (const Rat &q : points) {
      std::size_t m = 0;
      while (rem.degree() > 0) {
        K rr;
        Poly<K> next = rem.divide_linear(K(q), rr);
        if (!rr.is_zero())
          break;
        rem = std::move(next);
        ++m;
      }
      if (m > 0)
        orders.emplace_back(q, m);
    }
    if (rem.degree() > 0)
      throw PoleOutsidePointSet("denominator " + f.den().to_string() +
                                " has a factor outside the point set");
    r.poly_ = Poly<K>::divmod(f.num(), f.den()).first;
    for (const auto &[q, m] : orders) {
      Laurent<K> l = ppv::expand_at(f, K(q), -1);
      std::vector<K> c(m);
      for (std::size_t k = 1; k <= m; ++k)
        c[k - 1] = l.at(-static_cast<long>(k));
      r.parts_.emplace(q, std::move(c));
    }
    return r;
  }

  [[nodiscard]] std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    if (!poly_.is_zero()) {
      os << poly_.to_string();
      first = false;
    }
    for (const auto &[q, c] : parts_)
      for (std::size_t k = 1; k <= c.size(); ++k) {
        if (c[k - 1].is_zero())
          continue;
        if (!first)
          os << " + ";
        first = false;
        os << "(" << c[k - 1] << ")/(x - " << q << ")";
        if (k > 1)
          os << "^" << k;
      }
    if (first)
      os << "0";
    return os.str();
  }
  friend std::ostream &operator<<(std::ostream &os, const PartialFrac &f) {
    return os << f.to_string();
  }

private:
  void trim_at(const Rat &q) {
    auto it = parts_.find(q);
    auto &c = it->second;
    while (!c.empty() && c.back().is_zero())
      c.pop_back();
    if (c.empty())
      parts_.erase(it);
  }

  /// tau_j += sum_k c_k * [y^j] (y + d)^{-k}, y = x - p, d = p - q.
  static void add_pole_taylor(std::vector<K> &tau, const std::vector<K> &c,
                              const Rat &p, const Rat &q) {
    const std::size_t count = tau.size();
    const std::size_t m = c.size();
    const Rat e = (p - q).inverse();
    std::vector<Rat> epow(m + count + 1);
    epow[0] = Rat(1);
    for (std::size_t i = 1; i < epow.size(); ++i)
      epow[i] = epow[i - 1] * e;
    for (std::size_t j = 0; j < count; ++j) {
      K acc(0);
      for (std::size_t k = 1; k <= m; ++k) {
        if (c[k - 1].is_zero())
          continue;
        // binom(-k, j) = (-1)^j C(k + j - 1, j)
        Rat w = detail::pascal(k + j - 1, j) * epow[k + j];
        if (j % 2 == 1)
          w = -w;
        acc += c[k - 1] * K(w);
      }
      tau[j] += acc;
    }
  }

  /// out[k-1] += sum_{j >= 0} c[k-1+j] tau[j]  (principal part of c * tau)
  static void accumulate_principal(std::vector<K> &out, const std::vector<K> &c,
                                   const std::vector<K> &tau) {
    const std::size_t m = c.size();
    for (std::size_t k = 1; k <= m; ++k)
      for (std::size_t j = 0; k + j <= m && j < tau.size(); ++j)
        if (!c[k - 1 + j].is_zero() && !tau[j].is_zero())
          out[k - 1] += c[k - 1 + j] * tau[j];
  }

  /// Polynomial part of p * sum_q parts[q].
  static Poly<K> poly_times_parts_polynomial(const Poly<K> &p, const parts_type &parts) {
    Poly<K> out;
    if (p.degree() <= 0)
      return out;
    for (const auto &[q, c] : parts) {
      // p = sum_j pi_j y^j with y = x - q; keep y^{j-k} for j >= k.
      Poly<K> shifted = p.shift(K(q));
      const auto &pi = shifted.coeffs();
      std::vector<K> acc(pi.size(), K(0));
      for (std::size_t k = 1; k <= c.size(); ++k)
        for (std::size_t j = k; j < pi.size(); ++j)
          acc[j - k] += pi[j] * c[k - 1];
      out += Poly<K>(std::move(acc)).shift(-K(q));
    }
    return out;
  }

  Poly<K> poly_;
  parts_type parts_;
};

} // namespace ppv
