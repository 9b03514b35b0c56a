#pragma once

// Dense exact matrices over Integer or Rational. Column vectors are std::vector.

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "pingpong/rational.hpp"

namespace pingpong {

template <class T>
using Vec = std::vector<T>;
using ZVector = Vec<Integer>;
using QVector = Vec<Rational>;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (long x : r) data_.emplace_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_columns(const std::vector<Vec<T>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec<T> column(std::size_t j) const {
    Vec<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  Vec<T> row(std::size_t i) const {
    return Vec<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_identity() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }
  bool is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Vec<T> operator*(const Matrix& a, const Vec<T>& x) {
    if (a.cols_ != x.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
    Vec<T> y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) y[i] += a(i, k) * x[k];
    return y;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using ZMatrix = Matrix<Integer>;
using QMatrix = Matrix<Rational>;

template <class T>
Matrix<T> power(const Matrix<T>& m, unsigned long e) {
  if (!m.square()) throw std::invalid_argument("power of non-square matrix");
  Matrix<T> result = Matrix<T>::identity(m.rows()), base = m;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// x^T G y.
template <class T>
T pairing(const Matrix<T>& gram, const Vec<T>& x, const Vec<T>& y) {
  return dot(x, gram * y);
}

QMatrix to_rational(const ZMatrix& m);
QVector to_rational(const ZVector& v);
/// Throws std::domain_error if some entry is not integral.
ZMatrix to_integer(const QMatrix& m);
ZVector to_integer(const QVector& v);

Rational determinant(const QMatrix& m);
Integer determinant(const ZMatrix& m);
/// Throws std::domain_error on singular input.
QMatrix inverse(const QMatrix& m);
std::size_t rank(const QMatrix& m);
/// Basis of the right nullspace {x : m x = 0}, as columns in reduced echelon order.
std::vector<QVector> nullspace(const QMatrix& m);
/// Unique solution of m x = b for square invertible m.
QVector solve(const QMatrix& m, const QVector& b);

Rational sup_norm(const QVector& v);
Integer content(const ZVector& v);  // gcd of entries, 0 for the zero vector
bool is_zero(const QVector& v);

std::string to_string(const QVector& v);
std::string to_string(const ZVector& v);

}  // namespace pingpong
