#include "dkb/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dkb/errors.hpp"

namespace dkb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxDegree = 6;
}  // namespace

PolynomialTransform::PolynomialTransform(std::vector<double> coefficients)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty())
    throw InvalidInput("PolynomialTransform: no coefficients");
  if (coeffs_.size() - 1 > kMaxDegree)
    throw InvalidInput("PolynomialTransform: degree exceeds 6");
  for (double c : coeffs_)
    if (!std::isfinite(c))
      throw InvalidInput("PolynomialTransform: non-finite coefficient");
  if (coeffs_.size() > 1 && coeffs_.back() == 0.0)
    throw InvalidInput(
        "PolynomialTransform: leading coefficient of stated degree is zero");
}

PolynomialTransform PolynomialTransform::affine(double c1, double c0) {
  if (c1 == 0.0) return PolynomialTransform({c0});
  return PolynomialTransform({c0, c1});
}

double PolynomialTransform::eval(double x) const {
  double acc = coeffs_.back();
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

double eval_scalar(const PolynomialTransform& p, double x) { return p.eval(x); }

SymMatrix eval_matrix(const PolynomialTransform& p, const SymMatrix& m) {
  if (!m.all_finite()) throw InvalidInput("eval_matrix: non-finite entries");
  const std::size_t n = m.n();
  const auto& c = p.coefficients();

  SymMatrix result(n);
  for (std::size_t i = 0; i < n; ++i) result.set(i, i, c[0]);
  if (c.size() == 1) return result;

  // Affine term computed entrywise; higher powers by repeated multiplication
  // with re-symmetrization.
  {
    SymMatrix linear = scale_sub(c[1], m, SymMatrix(n));  // c1 * m
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        result.set(i, j, result(i, j) + linear(i, j));
  }
  if (c.size() == 2) return result;

  SymMatrix power = m;  // m^1
  for (std::size_t k = 2; k < c.size(); ++k) {
    power = multiply_symmetrized(power, m);
    if (c[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        result.set(i, j, result(i, j) + c[k] * power(i, j));
  }
  return result;
}

TransformedSpectrum transform_spectrum(const PolynomialTransform& p,
                                       const Spectrum& s) {
  TransformedSpectrum out{std::vector<double>(s.n), p};
  for (std::size_t i = 0; i < s.n; ++i) out.values[i] = p.eval(s.eigenvalues[i]);
  return out;
}

TransformedSpectrum TransformedSpectrum::from_values(std::vector<double> v,
                                                     PolynomialTransform p) {
  return TransformedSpectrum{std::move(v), std::move(p)};
}

AffineEndpoints affine_endpoints(const PolynomialTransform& f,
                                 const Spectrum& s, std::size_t j,
                                 std::size_t r) {
  if (!f.is_affine() || f.c1() == 0.0)
    throw DegenerateTransform(
        "affine_endpoints: slope is zero, spectrum collapses");
  if (r < 1 || j + r > s.n)
    throw InvalidInput("affine_endpoints: block indices out of range");

  // 1-based positions j, j+1, j+r, j+r+1 with boundary conventions.
  const auto at = [&](std::size_t pos_1based) -> double {
    if (pos_1based == 0) return -kInf;
    if (pos_1based > s.n) return kInf;
    return s.eigenvalues[pos_1based - 1];
  };
  const auto fx = [&](double x) -> double {
    if (std::isinf(x)) return (f.c1() > 0.0) == (x > 0.0) ? kInf : -kInf;
    return f.eval(x);
  };

  const double f_j = fx(at(j));
  const double f_j1 = fx(at(j + 1));
  const double f_jr = fx(at(j + r));
  const double f_jr1 = fx(at(j + r + 1));

  if (f.c1() > 0.0) return {f_j, f_j1, f_jr, f_jr1};
  return {f_jr1, f_jr, f_j1, f_j};
}

TransformedSpectrum identity_values(const Spectrum& s) {
  return TransformedSpectrum{s.eigenvalues, PolynomialTransform::identity()};
}

TransformedSpectrum reversed_values(const Spectrum& s) {
  std::vector<double> v(s.eigenvalues.rbegin(), s.eigenvalues.rend());
  return TransformedSpectrum{std::move(v), PolynomialTransform::identity()};
}

}  // namespace dkb
