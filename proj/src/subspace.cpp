#include "dkb/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "dkb/errors.hpp"

namespace dkb {

namespace {

void check_compatible(const EigenvectorBlock& w, const EigenvectorBlock& v) {
  if (w.n() != v.n() || w.r() != v.r())
    throw ShapeError("subspace metrics: blocks have different shapes");
}

/// Values outside [-1e-8, 1+1e-8] are genuine invariant violations;
/// anything inside is SVD noise and clamps.
void clamp_unit(std::vector<double>& vals) {
  for (double& s : vals) {
    if (s < -1e-8 || s > 1.0 + 1e-8)
      throw InvalidInput("canonical angles: singular value outside [0,1]");
    s = std::clamp(s, 0.0, 1.0);
  }
}

struct AngleData {
  std::vector<double> cosines;  // descending
  std::vector<double> sines;    // descending
};

AngleData angle_data(const EigenvectorBlock& w, const EigenvectorBlock& v) {
  AngleData out;
  // Cosines: singular values of the r x r product V^T W.
  const Matrix c = multiply_at_b(v.basis(), w.basis());
  out.cosines = svd_small(c).singular_values;
  clamp_unit(out.cosines);
  // Sines: singular values of (I - V V^T) W = W - V (V^T W).
  Matrix s = multiply(v.basis(), c);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t k = 0; k < s.cols(); ++k)
      s(i, k) = w.basis()(i, k) - s(i, k);
  out.sines = svd_small(s).singular_values;
  clamp_unit(out.sines);
  return out;
}

}  // namespace

EigenvectorBlock::EigenvectorBlock(Matrix basis, std::size_t offset)
    : basis_(std::move(basis)), offset_(offset) {
  const std::size_t n = basis_.rows();
  const std::size_t r = basis_.cols();
  if (r == 0 || r > n)
    throw InvalidInput("EigenvectorBlock: need 1 <= r <= n");
  const Matrix g = multiply_at_b(basis_, basis_);
  double dev = 0.0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      dev = std::max(dev, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  if (dev > 1e-9)
    throw InvalidInput("EigenvectorBlock: columns are not orthonormal");
}

EigenvectorBlock EigenvectorBlock::from_spectrum(const Spectrum& s,
                                                 std::size_t j, std::size_t r) {
  if (r < 1 || j + r > s.n)
    throw InvalidInput("EigenvectorBlock: block indices out of range");
  Matrix b(s.n, r);
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t c = 0; c < r; ++c) b(i, c) = s.eigenvectors(i, j + c);
  return EigenvectorBlock(std::move(b), j);
}

std::vector<double> CanonicalAngles::sines() const {
  return {all_sines.begin(),
          all_sines.begin() + static_cast<std::ptrdiff_t>(informative_count())};
}

CanonicalAngles canonical_angle_cosines(const EigenvectorBlock& w,
                                        const EigenvectorBlock& v) {
  check_compatible(w, v);
  AngleData data = angle_data(w, v);
  CanonicalAngles out;
  out.n = w.n();
  out.r = w.r();
  out.cosines = std::move(data.cosines);
  out.all_sines = std::move(data.sines);
  return out;
}

double rho1(const EigenvectorBlock& w, const EigenvectorBlock& v) {
  check_compatible(w, v);
  const AngleData data = angle_data(w, v);
  // 2 * sum_i (1 - cos theta_i), with each term evaluated as
  // sin^2 / (1 + cos) so small angles do not cancel. The k-th largest sine
  // pairs with the k-th smallest cosine.
  const std::size_t r = data.cosines.size();
  double acc = 0.0;
  for (std::size_t k = 0; k < r; ++k) {
    const double beta = data.sines[k];
    const double alpha = data.cosines[r - 1 - k];
    acc += beta * beta / (1.0 + alpha);
  }
  return std::sqrt(std::max(0.0, 2.0 * acc));
}

double rho2(const EigenvectorBlock& w, const EigenvectorBlock& v) {
  check_compatible(w, v);
  return angle_data(w, v).sines.front();
}

double c_factor(std::size_t n, std::size_t r) {
  if (r > n) throw InvalidInput("c_factor: r > n");
  if (r < 1) throw InvalidInput("c_factor: r < 1");
  return std::sqrt(2.0 * static_cast<double>(std::min(r, n - r)));
}

Matrix alignment_matrix(const EigenvectorBlock& w, const EigenvectorBlock& v) {
  check_compatible(w, v);
  const Matrix g = multiply_at_b(v.basis(), w.basis());
  const Svd svd = svd_small(g);
  Matrix q = multiply(svd.u, svd.v.transposed());
  return q;
}

}  // namespace dkb
