#pragma once

#include <cstddef>
#include <vector>

#include "dkb/linalg.hpp"
#include "dkb/matrix.hpp"

namespace dkb {

/// Polynomial p(t) = c_l t^l + ... + c_1 t + c_0, degree capped at 6.
/// The leading coefficient must be nonzero unless the degree is 0.
class PolynomialTransform {
 public:
  /// coefficients in ascending order: {c0, c1, ..., cl}.
  explicit PolynomialTransform(std::vector<double> coefficients);

  static PolynomialTransform identity() { return PolynomialTransform({0.0, 1.0}); }
  static PolynomialTransform constant(double c0) {
    return PolynomialTransform({c0});
  }
  /// Affine f(x) = c1*x + c0; collapses to a constant when c1 == 0.
  static PolynomialTransform affine(double c1, double c0);

  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  bool is_affine() const { return degree() <= 1; }
  double c0() const { return coeffs_[0]; }
  double c1() const { return degree() >= 1 ? coeffs_[1] : 0.0; }

  /// Horner evaluation.
  double eval(double x) const;

 private:
  std::vector<double> coeffs_;
};

/// Scalar action of the transform on a spectrum: values p(phi_i) kept in the
/// original index order (the transform may reorder the values; index
/// bookkeeping is what the interval machinery works with). Also usable as a
/// bare value-by-index list, e.g. for reversed-index comparisons.
struct TransformedSpectrum {
  std::vector<double> values;
  PolynomialTransform transform = PolynomialTransform::identity();

  std::size_t size() const { return values.size(); }

  static TransformedSpectrum from_values(std::vector<double> v,
                                         PolynomialTransform p);
};

double eval_scalar(const PolynomialTransform& p, double x);

/// p(M) = c_l M^l + ... + c_1 M + c_0 I. Powers are built by repeated
/// multiplication, re-symmetrizing after each product to stop drift.
SymMatrix eval_matrix(const PolynomialTransform& p, const SymMatrix& m);

TransformedSpectrum transform_spectrum(const PolynomialTransform& p,
                                       const Spectrum& s);

/// The four transformed-spectrum endpoints entering the DK interval
/// separations for an affine transform, as functions of the eigenvalues at
/// positions j, j+1, j+r, j+r+1 (1-based positions; position 0 reads as
/// -inf and position n+1 as +inf).
struct AffineEndpoints {
  double max_excluded_below;  // max over A2 of f(phi_i)
  double min_inner;           // min over the block of f(phi_i)
  double max_inner;           // max over the block of f(phi_i)
  double min_excluded_above;  // min over A1 of f(phi_i)
};

AffineEndpoints affine_endpoints(const PolynomialTransform& f,
                                 const Spectrum& s, std::size_t j,
                                 std::size_t r);

/// Identity-transform value list for a spectrum.
TransformedSpectrum identity_values(const Spectrum& s);

/// Value list in reversed index order: entry i pairs the block counted from
/// the top of the spectrum with the i-th block of the other matrix. Used for
/// opposite-ends comparisons.
TransformedSpectrum reversed_values(const Spectrum& s);

}  // namespace dkb
