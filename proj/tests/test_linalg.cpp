#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "dkb/errors.hpp"
#include "dkb/linalg.hpp"
#include "testutil.hpp"

using namespace dkb;
using dkbtest::random_sym;

namespace {

double reconstruction_error(const SymMatrix& m, const Spectrum& s) {
  const std::size_t n = m.n();
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = s.eigenvalues[i];
  const Matrix rec =
      multiply(multiply(s.eigenvectors, d), s.eigenvectors.transposed());
  return dkbtest::max_abs_diff(rec, m.to_matrix());
}

double orthonormality_error(const Spectrum& s) {
  const Matrix g = multiply_at_b(s.eigenvectors, s.eigenvectors);
  double dev = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      dev = std::max(dev, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return dev;
}

}  // namespace

TEST_CASE("eig_sym identity") {
  const Spectrum s = eig_sym(SymMatrix::identity(3));
  for (double v : s.eigenvalues) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(orthonormality_error(s) <= 1e-10);
  CHECK(reconstruction_error(SymMatrix::identity(3), s) <= 1e-8);
}

TEST_CASE("eig_sym diagonal sorts ascending with permuted basis") {
  const Spectrum s = eig_sym(SymMatrix::diagonal({3.0, 1.0, 2.0}));
  CHECK(s.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(s.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(s.eigenvalues[2] == doctest::Approx(3.0));
  // Columns are the standard basis vectors for positions 1, 2, 0; the sign
  // convention makes the single nonzero entry positive.
  CHECK(s.eigenvectors(1, 0) == doctest::Approx(1.0));
  CHECK(s.eigenvectors(2, 1) == doctest::Approx(1.0));
  CHECK(s.eigenvectors(0, 2) == doctest::Approx(1.0));
}

TEST_CASE("eig_sym 2x2 exchange matrix against the closed form") {
  SymMatrix m(2);
  m.set(0, 1, 1.0);
  const Spectrum s = eig_sym(m);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(s.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.eigenvectors(0, 0) == doctest::Approx(inv_sqrt2));
  CHECK(s.eigenvectors(1, 0) == doctest::Approx(-inv_sqrt2));
  CHECK(s.eigenvectors(0, 1) == doctest::Approx(inv_sqrt2));
  CHECK(s.eigenvectors(1, 1) == doctest::Approx(inv_sqrt2));
}

TEST_CASE("eig_sym rejects non-finite input") {
  SymMatrix m(2);
  m.set(0, 1, std::numeric_limits<double>::quiet_NaN());
  CHECK_THROWS_AS(eig_sym(m), InvalidInput);
}

TEST_CASE("eig_sym random: reconstruction, orthonormality, determinism") {
  SplitMix64 rng(11);
  for (std::size_t n : {1, 2, 3, 5, 8, 13, 20}) {
    const SymMatrix m = random_sym(rng, n);
    const Spectrum s = eig_sym(m);
    CHECK(orthonormality_error(s) <= 1e-10);
    CHECK(reconstruction_error(m, s) <= 1e-8 * std::max(1.0, m.max_abs()));
    for (std::size_t i = 1; i < n; ++i)
      CHECK(s.eigenvalues[i - 1] <= s.eigenvalues[i]);

    const Spectrum again = eig_sym(m);
    CHECK(std::memcmp(again.eigenvalues.data(), s.eigenvalues.data(), n * 8) == 0);
    CHECK(std::memcmp(again.eigenvectors.data(), s.eigenvectors.data(),
                      n * n * 8) == 0);
  }
}

TEST_CASE("spectral_norm fixtures") {
  CHECK(spectral_norm(SymMatrix::diagonal({-3.0, 2.0})) == doctest::Approx(3.0));
  CHECK(spectral_norm(SymMatrix(4)) == doctest::Approx(0.0));
  SymMatrix ex(2);
  ex.set(0, 1, 1.0);
  CHECK(spectral_norm(ex) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("norm inequalities and extreme eigenvalues on random matrices") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng.next_below(12);
    const SymMatrix m = random_sym(rng, n);
    const double sn = spectral_norm(m);
    const double fn = frobenius_norm(m);
    CHECK(sn <= fn + 1e-12);
    CHECK(fn <= std::sqrt(static_cast<double>(n)) * sn + 1e-12);

    const Spectrum s = eig_sym(m);
    const EigExtremes e = eig_extremes(m);
    CHECK(e.min == doctest::Approx(s.eigenvalues.front()).epsilon(1e-10));
    CHECK(e.max == doctest::Approx(s.eigenvalues.back()).epsilon(1e-10));
    CHECK(sn == doctest::Approx(std::max(std::abs(s.eigenvalues.front()),
                                         std::abs(s.eigenvalues.back())))
                    .epsilon(1e-10));
  }
}

TEST_CASE("frobenius_norm fixtures") {
  CHECK(frobenius_norm(SymMatrix::identity(2)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(frobenius_norm(SymMatrix(3)) == doctest::Approx(0.0));
  SymMatrix m(2);
  m.set(0, 0, 1.0);
  m.set(0, 1, 2.0);
  m.set(1, 1, 1.0);
  CHECK(frobenius_norm(m) == doctest::Approx(std::sqrt(10.0)));
}

TEST_CASE("svd_small fixtures") {
  {
    const Svd s = svd_small(Matrix::identity(2));
    CHECK(s.singular_values[0] == doctest::Approx(1.0));
    CHECK(s.singular_values[1] == doctest::Approx(1.0));
  }
  {
    Matrix m(1, 1);
    m(0, 0) = 0.5;
    const Svd s = svd_small(m);
    CHECK(s.singular_values[0] == doctest::Approx(0.5));
  }
  {
    // m^T m = [[25, 0], [0, 0]], so the singular values are (5, 0).
    Matrix m(2, 2);
    m(0, 0) = 3.0;
    m(1, 0) = 4.0;
    const Svd s = svd_small(m);
    CHECK(s.singular_values[0] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(s.singular_values[1] == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("svd_small reconstructs random matrices, including rank deficient") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng.next_below(7);
    const std::size_t c = 1 + rng.next_below(7);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.next_in(-2.0, 2.0);
    if (trial % 3 == 0 && r > 1) {
      for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j);  // rank drop
    }

    const Svd s = svd_small(m);
    const std::size_t k = std::min(r, c);
    for (std::size_t i = 1; i < k; ++i) {
      CHECK(s.singular_values[i - 1] >= s.singular_values[i]);
      CHECK(s.singular_values[i] >= 0.0);
    }
    Matrix d(k, k);
    for (std::size_t i = 0; i < k; ++i) d(i, i) = s.singular_values[i];
    const Matrix rec = multiply(multiply(s.u, d), s.v.transposed());
    CHECK(dkbtest::max_abs_diff(rec, m) <= 1e-9 * std::max(1.0, m.max_abs()));
  }
}

TEST_CASE("singular values of products of orthonormal blocks stay in [0,1]") {
  SplitMix64 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.next_below(9);
    const std::size_t r = 1 + rng.next_below(n);
    const Matrix w = dkbtest::random_orthonormal(rng, n, r);
    const Matrix v = dkbtest::random_orthonormal(rng, n, r);
    const Svd s = svd_small(multiply_at_b(v, w));
    for (double sv : s.singular_values) {
      CHECK(sv >= 0.0);
      CHECK(sv <= 1.0 + 1e-10);
    }
  }
}
