#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ppv/error.hpp"
#include "ppv/exact/matrix.hpp"
#include "ppv/exact/rat.hpp"
#include "ppv/exact/ratfunc.hpp"
#include "ppv/series/tseries.hpp"

namespace ppv {

/// A root as an integer vector in the standard basis e_1, ..., e_k.
using RootId = std::vector<int>;

inline RootId negate(RootId r) {
  for (auto &v : r)
    v = -v;
  return r;
}

inline std::string root_name(const RootId &r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i)
    s += (i ? "," : "") + std::to_string(r[i]);
  return s + ")";
}

struct RootData {
  RootId id;
  bool positive = false;
  bool simple = false;
  int height = 0;                   // signed height in the simple roots
  Matrix<Rat> nilpotent;            // X_alpha with u_alpha(c) = exp(c X_alpha)
  std::vector<int> coroot_exponents; // alpha^vee(c) = diag(c^{e_k})
};

namespace detail {
template <class S> struct is_tseries : std::false_type {};
template <class C> struct is_tseries<TSeries<C>> : std::true_type {};
} // namespace detail

/// Embeds a rational number into the scalar ring S.
template <class S> S scalar_from_rat(const Rat &r) {
  if constexpr (std::is_same_v<S, Rat>)
    return r;
  else if constexpr (detail::is_tseries<S>::value)
    return S(typename S::coeff_type(r));
  else
    return S(r);
}

/// Split root system with an explicit matrix realization.
///
/// Type A_l is realized on SL_{l+1} (u_{e_i - e_j}(c) = I + c E_ij); C_2 on
/// Sp_4 with respect to the form [[0, I], [-I, 0]].
class RootDatum {
public:
  static RootDatum make(const std::string &label) {
    if (label.size() >= 2 && label[0] == 'A') {
      int rank = 0;
      try {
        std::size_t used = 0;
        rank = std::stoi(label.substr(1), &used);
        if (used != label.size() - 1)
          rank = 0;
      } catch (const std::exception &) {
        rank = 0;
      }
      if (rank < 1)
        throw InvalidInput("unknown group type '" + label + "'");
      return type_a(rank);
    }
    if (label == "C2")
      return type_c2();
    throw InvalidInput("unknown group type '" + label + "' (supported: A1, A2, ..., C2)");
  }

  static RootDatum type_a(int rank) {
    RootDatum rd;
    rd.label_ = "A" + std::to_string(rank);
    rd.type_ = 'A';
    rd.rank_ = rank;
    rd.dim_ = static_cast<std::size_t>(rank + 1);
    const std::size_t n = rd.dim_;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j)
          continue;
        RootData r;
        r.id.assign(n, 0);
        r.id[i] = 1;
        r.id[j] = -1;
        r.positive = i < j;
        r.height = static_cast<int>(j) - static_cast<int>(i);
        r.simple = r.height == 1;
        r.nilpotent = Matrix<Rat>(n, n, Rat(0));
        r.nilpotent(i, j) = Rat(1);
        r.coroot_exponents.assign(n, 0);
        r.coroot_exponents[i] = 1;
        r.coroot_exponents[j] = -1;
        rd.roots_.push_back(std::move(r));
      }
    rd.finish();
    return rd;
  }

  static RootDatum type_c2() {
    RootDatum rd;
    rd.label_ = "C2";
    rd.type_ = 'C';
    rd.rank_ = 2;
    rd.dim_ = 4;
    // Basis v1, v2, v1*, v2*; torus diag(s1, s2, 1/s1, 1/s2).
    struct Spec {
      RootId id;
      int height;
      std::vector<std::pair<std::pair<int, int>, int>> entries;
      std::vector<int> coroot;
    };
    const std::vector<Spec> positive = {
        {{1, -1}, 1, {{{0, 1}, 1}, {{3, 2}, -1}}, {1, -1, -1, 1}},
        {{0, 2}, 1, {{{1, 3}, 1}}, {0, 1, 0, -1}},
        {{1, 1}, 2, {{{0, 3}, 1}, {{1, 2}, 1}}, {1, 1, -1, -1}},
        {{2, 0}, 3, {{{0, 2}, 1}}, {1, 0, -1, 0}},
    };
    for (const auto &s : positive)
      for (int sign : {1, -1}) {
        RootData r;
        r.id = sign > 0 ? s.id : negate(s.id);
        r.positive = sign > 0;
        r.height = sign * s.height;
        r.simple = sign > 0 && s.height == 1;
        r.nilpotent = Matrix<Rat>(4, 4, Rat(0));
        // X_{-alpha} is the transpose of X_alpha in this realization.
        for (const auto &[ij, v] : s.entries) {
          auto [i, j] = ij;
          if (sign > 0)
            r.nilpotent(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rat(v);
          else
            r.nilpotent(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = Rat(v);
        }
        r.coroot_exponents = s.coroot;
        if (sign < 0)
          for (auto &e : r.coroot_exponents)
            e = -e;
        rd.roots_.push_back(std::move(r));
      }
    rd.finish();
    return rd;
  }

  [[nodiscard]] const std::string &label() const { return label_; }
  [[nodiscard]] char type() const { return type_; }
  [[nodiscard]] int rank() const { return rank_; }
  [[nodiscard]] std::size_t rep_dim() const { return dim_; }
  [[nodiscard]] const std::vector<RootData> &roots() const { return roots_; }

  /// Phi+ = {alpha_1, ..., alpha_m}, ordered by height, then lexicographically.
  [[nodiscard]] const std::vector<RootId> &positive_roots() const { return positive_; }
  [[nodiscard]] std::vector<RootId> simple_roots() const {
    std::vector<RootId> out;
    for (const auto &r : positive_)
      if (root(r).simple)
        out.push_back(r);
    return out;
  }
  [[nodiscard]] std::size_t num_positive() const { return positive_.size(); }

  [[nodiscard]] bool contains(const RootId &id) const { return index_.contains(id); }
  [[nodiscard]] const RootData &root(const RootId &id) const {
    auto it = index_.find(id);
    if (it == index_.end())
      throw InvalidInput("root " + root_name(id) + " not in " + label_);
    return roots_[it->second];
  }

private:
  void finish() {
    for (std::size_t i = 0; i < roots_.size(); ++i)
      index_[roots_[i].id] = i;
    for (const auto &r : roots_)
      if (r.positive)
        positive_.push_back(r.id);
    std::sort(positive_.begin(), positive_.end(), [this](const RootId &a, const RootId &b) {
      const int ha = root(a).height, hb = root(b).height;
      if (ha != hb)
        return ha < hb;
      return a > b;
    });
  }

  std::string label_;
  char type_ = 'A';
  int rank_ = 0;
  std::size_t dim_ = 0;
  std::vector<RootData> roots_;
  std::vector<RootId> positive_;
  std::map<RootId, std::size_t> index_;
};

/// u_alpha(c) = exp(c X_alpha), a polynomial in c since X_alpha is nilpotent.
template <class S> Matrix<S> u_matrix(const RootDatum &rd, const RootId &alpha, const S &c) {
  const auto &X = rd.root(alpha).nilpotent;
  const std::size_t n = rd.rep_dim();
  Matrix<S> out = Matrix<S>::identity(n, scalar_from_rat<S>(Rat(1)), S());
  Matrix<Rat> power = X;
  S cpow = c;
  Rat fact(1);
  for (std::size_t k = 1; k <= n; ++k) {
    bool nonzero = false;
    fact *= Rat(static_cast<long>(k));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!power(i, j).is_zero()) {
          nonzero = true;
          out(i, j) += scalar_from_rat<S>(power(i, j) / fact) * cpow;
        }
    if (!nonzero)
      break;
    power = power * X;
    cpow = cpow * c;
  }
  return out;
}

/// n_alpha = u_alpha(1) u_{-alpha}(-1) u_alpha(1).
inline Matrix<Rat> weyl_rep(const RootDatum &rd, const RootId &alpha) {
  const RootId neg = negate(alpha);
  return u_matrix(rd, alpha, Rat(1)) * u_matrix(rd, neg, Rat(-1)) * u_matrix(rd, alpha, Rat(1));
}

/// alpha^vee(c) as a diagonal matrix. Throws NonInvertibleScalar for c = 0.
template <class S> Matrix<S> coroot_matrix(const RootDatum &rd, const RootId &alpha, const S &c) {
  if (c.is_zero())
    throw NonInvertibleScalar("coroot value at a zero scalar");
  S inv;
  try {
    inv = c.inverse();
  } catch (const error &e) {
    throw NonInvertibleScalar(e.what());
  }
  const auto &ex = rd.root(alpha).coroot_exponents;
  const std::size_t n = rd.rep_dim();
  Matrix<S> out = Matrix<S>::identity(n, scalar_from_rat<S>(Rat(1)), S());
  for (std::size_t k = 0; k < n; ++k) {
    S v = scalar_from_rat<S>(Rat(1));
    for (int e = 0; e < std::abs(ex[k]); ++e)
      v = v * (ex[k] > 0 ? c : inv);
    out(k, k) = v;
  }
  return out;
}

/// Which sign the middle factor of the Springer product carries.
enum class SpringerSign {
  Statement, // u_alpha(f) u_{-alpha}(-f^{-1}) u_alpha(f)
  ProofLine  // u_alpha(f) u_{-alpha}(f^{-1}) u_alpha(f)
};

/// Checks u_alpha(f) u_{-alpha}(-+f^{-1}) u_alpha(f) == alpha^vee(f) n_alpha
/// exactly over the field S.
template <class S>
bool springer_identity_check(const RootDatum &rd, const RootId &alpha, const S &f,
                             SpringerSign sign = SpringerSign::Statement) {
  const RootId neg = negate(alpha);
  S finv = f.inverse();
  if (sign == SpringerSign::Statement)
    finv = -finv;
  Matrix<S> lhs = u_matrix(rd, alpha, f) * u_matrix(rd, neg, finv) * u_matrix(rd, alpha, f);
  Matrix<S> n = weyl_rep(rd, alpha).map([](const Rat &r) { return scalar_from_rat<S>(r); });
  Matrix<S> rhs = coroot_matrix(rd, alpha, f) * n;
  return lhs == rhs;
}

/// The formal variable s of Q(s), used as a generic invertible scalar.
inline RatFunc<Rat> formal_scalar() { return RatFunc<Rat>::x(); }

// ---------------------------------------------------------------------------
// Group descriptors and the generation criterion.

enum class Multiplier { one, t, t_inverse };

inline std::string to_string(Multiplier m) {
  switch (m) {
  case Multiplier::one:
    return "one";
  case Multiplier::t:
    return "t";
  case Multiplier::t_inverse:
    return "t_inverse";
  }
  return "?";
}

inline Multiplier multiplier_from_string(const std::string &s) {
  if (s == "one")
    return Multiplier::one;
  if (s == "t")
    return Multiplier::t;
  if (s == "t_inverse")
    return Multiplier::t_inverse;
  throw ParseError("unknown multiplier '" + s + "'");
}

/// Symbolic local Galois group: u_root(constants * multiplier).
struct GroupDescriptor {
  RootId root;
  Multiplier multiplier = Multiplier::one;

  friend bool operator==(const GroupDescriptor &, const GroupDescriptor &) = default;
};

struct PropgenReport {
  bool pass = false;
  std::vector<std::string> missing; // one line per missing generator
};

/// Finite check of the two generation hypotheses with f_alpha = t:
///  (a) every simple alpha: u_alpha(1) and u_{-alpha}(-1) are realized,
///  (b) every positive alpha: u_alpha(t) and u_{-alpha}(-t^{-1}) are realized.
inline PropgenReport propgen_hypothesis_check(const RootDatum &rd,
                                              const std::vector<GroupDescriptor> &realized) {
  PropgenReport rep;
  auto has = [&](const RootId &r, Multiplier m) {
    return std::find(realized.begin(), realized.end(), GroupDescriptor{r, m}) != realized.end();
  };
  for (const auto &d : realized)
    if (!rd.contains(d.root))
      rep.missing.push_back("descriptor root " + root_name(d.root) + " is not a root of " +
                            rd.label());
  for (const auto &a : rd.simple_roots()) {
    if (!has(a, Multiplier::one))
      rep.missing.push_back("(a) u_alpha(1) for simple alpha = " + root_name(a));
    if (!has(negate(a), Multiplier::one))
      rep.missing.push_back("(a) u_-alpha(-1) for simple alpha = " + root_name(a));
  }
  for (const auto &a : rd.positive_roots()) {
    if (!has(a, Multiplier::t))
      rep.missing.push_back("(b) u_alpha(t) for alpha = " + root_name(a));
    if (!has(negate(a), Multiplier::t_inverse))
      rep.missing.push_back("(b) u_-alpha(-1/t) for alpha = " + root_name(a));
  }
  rep.pass = rep.missing.empty();
  return rep;
}

} // namespace ppv
