#pragma once

#include <cstddef>
#include <vector>

#include "dkb/linalg.hpp"
#include "dkb/matrix.hpp"

namespace dkb {

/// A block of r consecutive eigenvectors: an n x r matrix with orthonormal
/// columns (Stiefel element) together with its offset j into the ascending
/// spectrum. Column span is what the distance metrics compare.
class EigenvectorBlock {
 public:
  /// Wraps a basis; throws InvalidInput unless ||B^T B - I||_max <= 1e-9.
  EigenvectorBlock(Matrix basis, std::size_t offset = 0);

  /// Columns j .. j+r-1 of a spectrum's eigenvector matrix.
  static EigenvectorBlock from_spectrum(const Spectrum& s, std::size_t j,
                                        std::size_t r);

  std::size_t n() const { return basis_.rows(); }
  std::size_t r() const { return basis_.cols(); }
  std::size_t offset() const { return offset_; }
  const Matrix& basis() const { return basis_; }

 private:
  Matrix basis_;
  std::size_t offset_;
};

/// Canonical angles between two r-dimensional subspaces. Cosines are the
/// singular values of V^T W (descending, clamped to [0, 1]); the matching
/// sines are computed independently as the singular values of
/// W - V (V^T W), i.e. of (I - V V^T) W, which keeps small angles accurate
/// where sqrt(1 - cos^2) would lose half the digits. Only min(r, n-r)
/// angles can be nonzero; sines() exposes that leading list.
struct CanonicalAngles {
  std::size_t n = 0;
  std::size_t r = 0;
  std::vector<double> cosines;    // r values, descending
  std::vector<double> all_sines;  // r values, descending

  std::size_t informative_count() const { return std::min(r, n - r); }
  /// Leading min(r, n-r) sines, descending (largest angle first).
  std::vector<double> sines() const;
  double min_cosine() const { return cosines.back(); }
  double max_sine() const { return all_sines.front(); }
};

CanonicalAngles canonical_angle_cosines(const EigenvectorBlock& w,
                                        const EigenvectorBlock& v);

/// Procrustes-aligned Frobenius distance between the spans,
/// rho1 = sqrt(2 * sum_i (1 - alpha_i)).
double rho1(const EigenvectorBlock& w, const EigenvectorBlock& v);

/// Largest canonical-angle sine, ||W W^T (I - V V^T)||_2 in [0, 1].
double rho2(const EigenvectorBlock& w, const EigenvectorBlock& v);

/// c_{n,r} = sqrt(2 * min(r, n-r)); relates the two metrics:
/// rho1 <= c_{n,r} * rho2.
double c_factor(std::size_t n, std::size_t r);

/// Orthogonal Q minimizing ||W - V Q||_F: the polar factor of V^T W.
Matrix alignment_matrix(const EigenvectorBlock& w, const EigenvectorBlock& v);

}  // namespace dkb
