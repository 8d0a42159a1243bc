#pragma once

#include <cstddef>
#include <vector>

#include "dkb/errors.hpp"

namespace dkb {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const double& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  double* row(std::size_t i) { return a_.data() + i * cols_; }
  const double* row(std::size_t i) const { return a_.data() + i * cols_; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }
  std::size_t size() const { return a_.size(); }

  bool all_finite() const;

  /// Largest absolute entry (0 for an empty matrix).
  double max_abs() const;

  Matrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> a_;
};

/// C = A * B
Matrix multiply(const Matrix& a, const Matrix& b);

/// C = A^T * B
Matrix multiply_at_b(const Matrix& a, const Matrix& b);

/// Symmetric matrix. Entries are stored densely and kept exactly symmetric:
/// construction from general data averages mirrored entries once and stores
/// the same double in both triangles.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {
    if (n == 0) throw InvalidInput("SymMatrix: dimension must be >= 1");
  }

  /// Symmetrize a square matrix: entry (i,j) and (j,i) both become the
  /// average of the two input entries.
  static SymMatrix symmetrized(const Matrix& m);

  /// Wrap a matrix that is already exactly symmetric as stored.
  static SymMatrix from_symmetric(const Matrix& m);

  static SymMatrix diagonal(const std::vector<double>& d);
  static SymMatrix identity(std::size_t n);

  std::size_t n() const { return n_; }

  const double& operator()(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }

  /// Set entry (i,j) and its mirror (j,i) to the same value.
  void set(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }

  const double* row(std::size_t i) const { return a_.data() + i * n_; }
  const double* data() const { return a_.data(); }
  double* mutable_data() { return a_.data(); }

  bool all_finite() const;
  double max_abs() const;

  Matrix to_matrix() const;

 private:
  std::size_t n_;
  std::vector<double> a_;
};

/// C = a*X - Y for symmetric X, Y of equal size. Exact mirror symmetry of the
/// inputs carries through entrywise.
SymMatrix scale_sub(double a, const SymMatrix& x, const SymMatrix& y);

/// Symmetrized product (A*B + (A*B)^T) / 2 of two symmetric matrices.
SymMatrix multiply_symmetrized(const SymMatrix& a, const SymMatrix& b);

}  // namespace dkb
