#pragma once

#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include "ppv/error.hpp"
#include "ppv/parallel.hpp"

namespace ppv {

/// Small dense row-major matrix over a commutative ring S.
template <class S> class Matrix {
public:
  using value_type = S;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const S &fill = S())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const S &one = S(1), const S &zero = S()) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = one;
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool square() const { return rows_ == cols_; }

  S &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  [[nodiscard]] const std::vector<S> &data() const { return data_; }
  [[nodiscard]] std::vector<S> &data() { return data_; }

  template <class F> [[nodiscard]] auto map(F &&f) const {
    using T = decltype(f(std::declval<const S &>()));
    Matrix<T> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        out(i, j) = f((*this)(i, j));
    return out;
  }

  Matrix &operator+=(const Matrix &o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i)
      data_[i] += o.data_[i];
    return *this;
  }
  Matrix &operator-=(const Matrix &o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i)
      data_[i] -= o.data_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto &v : a.data_)
      v = -v;
    return a;
  }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols_ != b.rows_)
      throw InvalidInput("matrix product: shape mismatch");
    Matrix r(a.rows_, b.cols_);
    parallel_for(a.rows_ * b.cols_, [&](std::size_t idx) {
      const std::size_t i = idx / b.cols_, j = idx % b.cols_;
      if (a.cols_ == 0)
        return;
      S acc = a(i, 0) * b(0, j);
      for (std::size_t k = 1; k < a.cols_; ++k)
        acc += a(i, k) * b(k, j);
      r(i, j) = std::move(acc);
    });
    return r;
  }
  friend Matrix operator*(Matrix a, const S &s) {
    for (auto &v : a.data_)
      v = v * s;
    return a;
  }
  friend Matrix operator*(const S &s, Matrix a) {
    for (auto &v : a.data_)
      v = s * v;
    return a;
  }

  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream &operator<<(std::ostream &os, const Matrix &m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j)
        os << (j ? ", " : "") << m(i, j);
      os << "]";
    }
    return os << "]";
  }

private:
  void check_same(const Matrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw InvalidInput("matrix sum: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

/// Determinant by cofactor expansion; division-free, fine for n <= 5.
template <class S> S determinant(const Matrix<S> &m) {
  if (!m.square())
    throw InvalidInput("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 1)
    return m(0, 0);
  if (n == 2)
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  S acc = S();
  bool first = true;
  for (std::size_t j = 0; j < n; ++j) {
    Matrix<S> minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j)
          minor(r - 1, cc++) = m(r, c);
    S term = m(0, j) * determinant(minor);
    if (first) {
      acc = j % 2 ? -term : term;
      first = false;
    } else if (j % 2) {
      acc -= term;
    } else {
      acc += term;
    }
  }
  return acc;
}

/// Gauss-Jordan inverse over a field-like S (needs S::inverse()).
/// Throws SingularLeadingMatrix when no pivot exists.
template <class S> Matrix<S> field_inverse(Matrix<S> a) {
  if (!a.square())
    throw InvalidInput("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<S> inv = Matrix<S>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).is_zero())
      ++piv;
    if (piv == n)
      throw SingularLeadingMatrix("leading matrix is singular");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const S p = a(col, col).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) = a(col, j) * p;
      inv(col, j) = inv(col, j) * p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero())
        continue;
      const S f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

} // namespace ppv
