#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "frobenius/rational.hpp"

namespace frobenius {

/// Small dense row-major matrix over an exact or floating scalar.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
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
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_exact_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<T> r(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Matrix<Complex>;
using RationalMatrix = Matrix<Rational>;

/// Largest entry magnitude.
template <class T>
double max_abs(const Matrix<T>& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r = std::max(r, magnitude(m(i, j)));
  return r;
}

/// Exact largest entry magnitude for rational matrices (no rounding).
inline Rational max_abs_exact(const RationalMatrix& m) {
  Rational r = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r = std::max(r, Rational(abs(m(i, j))));
  return r;
}

/// Gauss-Jordan inverse with partial pivoting; nullopt when a pivot is
/// exactly zero. Exact for Rational.
template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> a = m;
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = magnitude(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = magnitude(a(r, col));
      if (mag > best || (is_exact_zero(a(pivot, col)) && !is_exact_zero(a(r, col)))) {
        best = mag;
        pivot = r;
      }
    }
    if (is_exact_zero(a(pivot, col))) return std::nullopt;
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    const T p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || is_exact_zero(a(r, col))) continue;
      const T f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Solves A x = b for square A by Gauss-Jordan; nullopt if singular.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
  auto inv = inverse(a);
  if (!inv) return std::nullopt;
  return *inv * b;
}

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
  ComplexMatrix m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

inline ComplexMatrix to_complex(const RationalMatrix& m) {
  ComplexMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = scalar_cast<Complex>(m(i, j));
  return r;
}

struct SingularValueSummary {
  double smallest = 0.0;
  double largest = 0.0;
  double ratio() const { return largest > 0.0 ? smallest / largest : 0.0; }
};

inline SingularValueSummary singular_values(const ComplexMatrix& m) {
  if (m.rows() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  const auto& s = svd.singularValues();
  return {s.minCoeff(), s.maxCoeff()};
}

/// Default guard: smallest singular value must exceed 1e-10 times the largest.
inline constexpr double kDegeneracyRatio = 1e-10;

inline bool is_nondegenerate(const ComplexMatrix& m, double ratio = kDegeneracyRatio) {
  const auto sv = singular_values(m);
  return sv.largest > 0.0 && sv.smallest > ratio * sv.largest;
}

/// Inverse guarded by the singular-value test; throws DegenerateError.
inline ComplexMatrix guarded_inverse(const ComplexMatrix& m, double ratio = kDegeneracyRatio) {
  if (!is_nondegenerate(m, ratio)) throw DegenerateError("matrix is numerically degenerate");
  return from_eigen(to_eigen(m).fullPivLu().inverse());
}

/// Eigenvalues of a real symmetric matrix, ascending.
inline std::vector<double> symmetric_eigenvalues(const Matrix<double>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(e, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Symmetric 3-tensor storage (all n^3 entries stored; symmetry is a
/// property checked by callers, not enforced).
template <class T>
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t n, const T& fill = T(0)) : n_(n), data_(n * n * n, fill) {}

  std::size_t dim() const { return n_; }
  T& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const { return data_[(i * n_ + j) * n_ + k]; }

  /// Sets all six permutations of (i,j,k).
  void set_symmetric(std::size_t i, std::size_t j, std::size_t k, const T& v) {
    (*this)(i, j, k) = v;
    (*this)(i, k, j) = v;
    (*this)(j, i, k) = v;
    (*this)(j, k, i) = v;
    (*this)(k, i, j) = v;
    (*this)(k, j, i) = v;
  }

  /// The matrix [F_i]_{jk} = F_ijk.
  Matrix<T> slice(std::size_t i) const {
    Matrix<T> m(n_, n_);
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) m(j, k) = (*this)(i, j, k);
    return m;
  }

  /// The matrix [F_V]_{jk} = sum_i V_i F_ijk.
  Matrix<T> contract(const std::vector<T>& v) const {
    if (v.size() != n_) throw std::invalid_argument("contraction vector has wrong length");
    Matrix<T> m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (is_exact_zero(v[i])) continue;
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k) m(j, k) += v[i] * (*this)(i, j, k);
    }
    return m;
  }

  /// Largest |T_ijk - T_sigma(ijk)| over all permutations.
  double max_asymmetry() const {
    double r = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k) {
          const T& a = (*this)(i, j, k);
          for (const T* b : {&(*this)(i, k, j), &(*this)(j, i, k), &(*this)(j, k, i), &(*this)(k, i, j),
                             &(*this)(k, j, i)})
            r = std::max(r, magnitude(T(a - *b)));
        }
    return r;
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using ComplexTensor = Tensor3<Complex>;

}  // namespace frobenius
