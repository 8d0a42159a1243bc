#pragma once

#include <cstddef>
#include <vector>

#include "dkb/matrix.hpp"

namespace dkb {

/// Full eigendecomposition of a symmetric matrix. Eigenvalues are sorted
/// ascending; column k of `eigenvectors` pairs with `eigenvalues[k]`. Each
/// eigenvector is scaled so its largest-magnitude component is positive
/// (first nonzero component decides on a magnitude tie), which makes the
/// output deterministic.
struct Spectrum {
  std::size_t n = 0;
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

/// Cyclic Jacobi eigensolver. Sweeps rotate (p,q) pairs in lexicographic
/// order until the off-diagonal Frobenius mass drops below 1e-12 * ||M||_F.
Spectrum eig_sym(const SymMatrix& m);

/// Smallest and largest eigenvalue of a symmetric matrix, via Householder
/// tridiagonalization and Sturm-sequence bisection. Much cheaper than
/// eig_sym when eigenvectors are not needed.
struct EigExtremes {
  double min;
  double max;
};
EigExtremes eig_extremes(const SymMatrix& m);

/// Largest singular value = max(|lambda_min|, |lambda_max|).
double spectral_norm(const SymMatrix& m);

/// Square root of the sum of squared entries.
double frobenius_norm(const Matrix& m);
double frobenius_norm(const SymMatrix& m);

/// Thin SVD of a small dense matrix: m = U * diag(sigma) * V^T with
/// sigma sorted descending, U (rows x k), V (cols x k), k = min(rows, cols).
/// Computed from the eigendecomposition of the smaller Gram matrix.
struct Svd {
  std::vector<double> singular_values;
  Matrix u;
  Matrix v;
};
Svd svd_small(const Matrix& m);

}  // namespace dkb
