#include "dkb/matrix.hpp"

#include <cmath>

#include "dkb/kernels.hpp"

namespace dkb {

bool Matrix::all_finite() const {
  for (double v : a_)
    if (!std::isfinite(v)) return false;
  return true;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("multiply: inner dimensions differ");
  const auto& k = kern::active();
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i);
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double ail = a(i, l);
      if (ail != 0.0) k.axpy(ci, b.row(l), b.cols(), ail);
    }
  }
  return c;
}

Matrix multiply_at_b(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows())
    throw ShapeError("multiply_at_b: row counts differ");
  const auto& k = kern::active();
  Matrix c(a.cols(), b.cols());
  for (std::size_t l = 0; l < a.rows(); ++l) {
    const double* bl = b.row(l);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double v = a(l, i);
      if (v != 0.0) k.axpy(c.row(i), bl, b.cols(), v);
    }
  }
  return c;
}

SymMatrix SymMatrix::symmetrized(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("symmetrized: matrix not square");
  SymMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s.set(i, i, m(i, i));
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  }
  return s;
}

SymMatrix SymMatrix::from_symmetric(const Matrix& m) {
  if (m.rows() != m.cols())
    throw ShapeError("from_symmetric: matrix not square");
  SymMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) {
      if (m(i, j) != m(j, i))
        throw InvalidInput("from_symmetric: matrix is not exactly symmetric");
      s.set(i, j, m(i, j));
    }
  return s;
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& d) {
  SymMatrix s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s.set(i, i, d[i]);
  return s;
}

SymMatrix SymMatrix::identity(std::size_t n) {
  SymMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) s.set(i, i, 1.0);
  return s;
}

bool SymMatrix::all_finite() const {
  for (double v : a_)
    if (!std::isfinite(v)) return false;
  return true;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

Matrix SymMatrix::to_matrix() const {
  Matrix m(n_, n_);
  for (std::size_t i = 0; i < n_ * n_; ++i) m.data()[i] = a_[i];
  return m;
}

SymMatrix scale_sub(double a, const SymMatrix& x, const SymMatrix& y) {
  if (x.n() != y.n()) throw ShapeError("scale_sub: dimensions differ");
  SymMatrix out(x.n());
  kern::active().scale_sub(out.mutable_data(), x.data(), y.data(),
                           x.n() * x.n(), a);
  return out;
}

SymMatrix multiply_symmetrized(const SymMatrix& a, const SymMatrix& b) {
  if (a.n() != b.n())
    throw ShapeError("multiply_symmetrized: dimensions differ");
  Matrix p = multiply(a.to_matrix(), b.to_matrix());
  return SymMatrix::symmetrized(p);
}

}  // namespace dkb
