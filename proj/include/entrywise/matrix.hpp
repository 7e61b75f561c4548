#pragma once

#include "entrywise/errors.hpp"
#include "entrywise/scalar.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace entrywise {

/// Dense row-major matrix over a scalar backend.
template <Scalar T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = scalar_traits<T>::from_int(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      detail::require(r.size() == cols_, "Matrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scalar_traits<T>::from_int(1);
    return m;
  }
  static Matrix constant(std::size_t n, const T& value) { return Matrix(n, n, value); }
  static Matrix diagonal(std::span<const T> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<T> row_vector(std::size_t i) const { return {row(i).begin(), row(i).end()}; }

  Matrix adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = scalar_traits<T>::conj((*this)(i, j));
    return m;
  }

  Matrix principal_submatrix(std::span<const std::size_t> idx) const {
    return submatrix(idx, idx);
  }
  Matrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    Matrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(rows[i], cols[j]);
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    detail::require(a.cols_ == b.rows_, "Matrix: inner dimension mismatch");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (scalar_traits<T>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!scalar_traits<T>::is_zero(x)) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, scalar_traits<T>::magnitude(x));
    return m;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    detail::require(rows_ == o.rows_ && cols_ == o.cols_, "Matrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using MatrixC = Matrix<Complex>;
using MatrixQ = Matrix<GaussianRational>;

/// u v^T (no conjugation): the rank-one matrix of the bilinear identities.
template <Scalar T>
Matrix<T> outer(std::span<const T> u, std::span<const T> v) {
  Matrix<T> m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
  return m;
}

/// u u^*.
template <Scalar T>
Matrix<T> outer_adjoint(std::span<const T> u) {
  Matrix<T> m(u.size(), u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) m(i, j) = u[i] * scalar_traits<T>::conj(u[j]);
  return m;
}

/// Determinant. Exact backend: fraction-free Bareiss elimination with row
/// pivoting on nonzero entries. Floating backend: LU with partial pivoting.
template <Scalar T>
T determinant(Matrix<T> a) {
  detail::require(a.is_square(), "determinant: matrix must be square");
  const std::size_t n = a.rows();
  const T zero = scalar_traits<T>::from_int(0);
  const T one = scalar_traits<T>::from_int(1);
  if (n == 0) return one;

  if constexpr (is_exact_v<T>) {
    T prev = one;
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (a(k, k).is_zero()) {
        std::size_t p = k + 1;
        while (p < n && a(p, k).is_zero()) ++p;
        if (p == n) return zero;
        for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        negate = !negate;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        }
        a(i, k) = zero;
      }
      prev = a(k, k);
    }
    T det = a(n - 1, n - 1);
    return negate ? -det : det;
  } else {
    T det = one;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      double best = std::abs(a(k, k));
      for (std::size_t i = k + 1; i < n; ++i) {
        if (std::abs(a(i, k)) > best) {
          best = std::abs(a(i, k));
          p = i;
        }
      }
      if (best == 0.0) return zero;
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
        det = -det;
      }
      det *= a(k, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        const T f = a(i, k) / a(k, k);
        for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      }
    }
    return det;
  }
}

inline Eigen::MatrixXcd to_eigen(const MatrixC& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

inline MatrixC from_eigen(const Eigen::MatrixXcd& m) {
  MatrixC a(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
  return a;
}

inline MatrixC to_complex(const MatrixQ& a) {
  MatrixC m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).to_complex();
  return m;
}

}  // namespace entrywise
