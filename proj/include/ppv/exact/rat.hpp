#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "ppv/error.hpp"

namespace ppv {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator (GMP canonical form).
class Rat {
public:
  Rat() = default;
  Rat(long v) : v_(v) {}
  Rat(int v) : v_(static_cast<long>(v)) {}
  Rat(long num, long den) {
    if (den == 0)
      throw DivByZero("rational with zero denominator");
    v_ = mpq_class(mpz_class(num), mpz_class(den));
    v_.canonicalize();
  }
  explicit Rat(const mpq_class &v) : v_(v) { v_.canonicalize(); }
  explicit Rat(const mpz_class &v) : v_(v) {}

  /// Parses "p/q" or "p" (optionally signed). Throws ParseError.
  static Rat parse(std::string_view s) {
    std::string str(s);
    auto slash = str.find('/');
    auto valid_int = [](const std::string &part) {
      if (part.empty())
        return false;
      std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
      if (i == part.size())
        return false;
      for (; i < part.size(); ++i)
        if (part[i] < '0' || part[i] > '9')
          return false;
      return true;
    };
    auto strip_plus = [](std::string part) {
      if (!part.empty() && part[0] == '+')
        part.erase(0, 1);
      return part;
    };
    if (slash == std::string::npos) {
      if (!valid_int(str))
        throw ParseError("not a rational: '" + str + "'");
      return Rat(mpz_class(strip_plus(str)));
    }
    auto num = str.substr(0, slash), den = str.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-')
      throw ParseError("not a rational: '" + str + "'");
    mpz_class d(strip_plus(den));
    if (d == 0)
      throw ParseError("zero denominator in '" + str + "'");
    return Rat(mpq_class(mpz_class(strip_plus(num)), d));
  }

  /// Canonical "p/q" form; integers are written with denominator 1.
  [[nodiscard]] std::string str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  [[nodiscard]] bool is_zero() const { return sgn(v_) == 0; }
  [[nodiscard]] bool is_one() const { return v_ == 1; }
  [[nodiscard]] int sign() const { return sgn(v_); }
  [[nodiscard]] mpz_class num() const { return v_.get_num(); }
  [[nodiscard]] mpz_class den() const { return v_.get_den(); }
  [[nodiscard]] const mpq_class &raw() const { return v_; }

  [[nodiscard]] Rat inverse() const {
    if (is_zero())
      throw DivByZero("inverse of zero rational");
    Rat r;
    mpq_inv(r.v_.get_mpq_t(), v_.get_mpq_t());
    return r;
  }

  /// Integer power; negative exponents invert.
  [[nodiscard]] Rat pow(long e) const {
    if (e < 0)
      return inverse().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    Rat r;
    r.v_.get_num() = n;
    r.v_.get_den() = d;
    return r;
  }

  Rat &operator+=(const Rat &o) {
    mpq_add(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
    return *this;
  }
  Rat &operator-=(const Rat &o) {
    mpq_sub(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
    return *this;
  }
  Rat &operator*=(const Rat &o) {
    mpq_mul(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
    return *this;
  }
  Rat &operator/=(const Rat &o) {
    if (o.is_zero())
      throw DivByZero("rational division by zero");
    mpq_div(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
    return *this;
  }

  friend Rat operator+(Rat a, const Rat &b) { return a += b; }
  friend Rat operator-(Rat a, const Rat &b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat &b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat &b) { return a /= b; }
  friend Rat operator-(Rat a) {
    mpq_neg(a.v_.get_mpq_t(), a.v_.get_mpq_t());
    return a;
  }

  friend bool operator==(const Rat &a, const Rat &b) {
    return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rat &a, const Rat &b) {
    int c = mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  friend std::ostream &operator<<(std::ostream &os, const Rat &r) {
    return os << r.v_.get_str();
  }

private:
  mpq_class v_;
};

/// Binomial coefficient C(n, k) for n >= 0, as a rational.
inline Rat binomial(long n, long k) {
  if (k < 0 || k > n)
    return Rat(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rat(r);
}

} // namespace ppv
