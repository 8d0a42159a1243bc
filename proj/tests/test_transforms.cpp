#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "dkb/errors.hpp"
#include "dkb/graph.hpp"
#include "dkb/subspace.hpp"
#include "dkb/transforms.hpp"
#include "testutil.hpp"

using namespace dkb;

TEST_CASE("polynomial construction rules") {
  CHECK_THROWS_AS(PolynomialTransform({}), InvalidInput);
  CHECK_THROWS_AS(PolynomialTransform({1.0, 0.0}), InvalidInput);  // fake degree
  CHECK_THROWS_AS(PolynomialTransform({0, 1, 1, 1, 1, 1, 1, 1}), InvalidInput);
  CHECK_THROWS_AS(PolynomialTransform({std::nan("")}), InvalidInput);

  CHECK(PolynomialTransform::affine(0.0, 5.0).degree() == 0);
  CHECK(PolynomialTransform::affine(2.0, 5.0).degree() == 1);
  CHECK(PolynomialTransform::identity().c1() == 1.0);
  CHECK(PolynomialTransform::identity().c0() == 0.0);
}

TEST_CASE("eval_scalar") {
  CHECK(eval_scalar(PolynomialTransform::identity(), 3.5) == 3.5);
  CHECK(eval_scalar(PolynomialTransform::constant(2.0), -7.0) == 2.0);
  CHECK(eval_scalar(PolynomialTransform({0.0, 0.0, 1.0}), 2.0) == 4.0);
}

TEST_CASE("eval_matrix fixtures") {
  SplitMix64 rng(31);
  const SymMatrix m = dkbtest::random_sym(rng, 3);

  SUBCASE("identity leaves the matrix unchanged") {
    const SymMatrix out = eval_matrix(PolynomialTransform::identity(), m);
    CHECK(dkbtest::max_abs_diff(out.to_matrix(), m.to_matrix()) == 0.0);
  }
  SUBCASE("constant gives a scaled identity") {
    const SymMatrix out = eval_matrix(PolynomialTransform::constant(2.0), m);
    CHECK(dkbtest::max_abs_diff(out.to_matrix(),
                                SymMatrix::diagonal({2, 2, 2}).to_matrix()) == 0.0);
  }
  SUBCASE("squaring a diagonal squares the entries") {
    const SymMatrix d = SymMatrix::diagonal({1.0, 2.0});
    const SymMatrix out = eval_matrix(PolynomialTransform({0.0, 0.0, 1.0}), d);
    CHECK(out(0, 0) == doctest::Approx(1.0));
    CHECK(out(1, 1) == doctest::Approx(4.0));
    CHECK(out(0, 1) == doctest::Approx(0.0));
  }
  SUBCASE("non-finite input is rejected") {
    SymMatrix bad(2);
    bad.set(0, 0, std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(eval_matrix(PolynomialTransform::identity(), bad),
                    InvalidInput);
  }
}

TEST_CASE("transform_spectrum keeps original index order") {
  Spectrum s;
  s.n = 3;
  s.eigenvalues = {1.0, 2.0, 3.0};
  s.eigenvectors = Matrix::identity(3);

  const auto id = transform_spectrum(PolynomialTransform::identity(), s);
  CHECK(id.values == std::vector<double>{1.0, 2.0, 3.0});

  const auto neg = transform_spectrum(PolynomialTransform::affine(-1.0, 0.0), s);
  CHECK(neg.values == std::vector<double>{-1.0, -2.0, -3.0});  // not re-sorted
}

TEST_CASE("a d-regular graph's L spectrum scaled by 1/d is the L_sym spectrum") {
  const Graph g = random_regular(16, 4, 99);
  const ShiftOperatorSet ops = shift_operators(g);
  const Spectrum sl = eig_sym(ops.laplacian);
  const Spectrum slsym = eig_sym(ops.laplacian_sym);

  const auto ts = transform_spectrum(PolynomialTransform::affine(1.0 / 4.0, 0.0), sl);
  const auto scaled = dkbtest::sorted(ts.values);
  for (std::size_t i = 0; i < sl.n; ++i)
    CHECK(scaled[i] == doctest::Approx(slsym.eigenvalues[i]).epsilon(1e-9));
}

TEST_CASE("affine_endpoints reads the order statistics for either slope sign") {
  Spectrum s;
  s.n = 4;
  s.eigenvalues = {0.0, 1.0, 2.0, 3.0};
  s.eigenvectors = Matrix::identity(4);

  SUBCASE("increasing transform") {
    const auto e =
        affine_endpoints(PolynomialTransform::affine(1.0, 0.1), s, 1, 2);
    CHECK(e.max_excluded_below == doctest::Approx(0.1));
    CHECK(e.min_inner == doctest::Approx(1.1));
    CHECK(e.max_inner == doctest::Approx(2.1));
    CHECK(e.min_excluded_above == doctest::Approx(3.1));
  }
  SUBCASE("decreasing transform reverses the roles") {
    const auto e =
        affine_endpoints(PolynomialTransform::affine(-1.0, 0.0), s, 1, 2);
    CHECK(e.max_excluded_below == doctest::Approx(-3.0));
    CHECK(e.min_inner == doctest::Approx(-2.0));
    CHECK(e.max_inner == doctest::Approx(-1.0));
    CHECK(e.min_excluded_above == doctest::Approx(-0.0));
  }
  SUBCASE("boundary blocks read as infinities") {
    const auto e =
        affine_endpoints(PolynomialTransform::affine(2.0, 0.0), s, 0, 4);
    CHECK(e.max_excluded_below == -std::numeric_limits<double>::infinity());
    CHECK(e.min_excluded_above == std::numeric_limits<double>::infinity());
  }
  SUBCASE("flat transform is rejected") {
    CHECK_THROWS_AS(
        affine_endpoints(PolynomialTransform::affine(0.0, 5.0), s, 1, 2),
        DegenerateTransform);
  }
  SUBCASE("for positive slope the quadruple is ordered") {
    SplitMix64 rng(34);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 3 + rng.next_below(6);
      Spectrum sp;
      sp.n = n;
      sp.eigenvalues.resize(n);
      double acc = rng.next_in(-2.0, 0.0);
      for (auto& v : sp.eigenvalues) v = acc += rng.next_in(0.01, 1.0);
      sp.eigenvectors = Matrix::identity(n);
      const std::size_t r = 1 + rng.next_below(n);
      const std::size_t j = rng.next_below(n - r + 1);
      const auto e = affine_endpoints(
          PolynomialTransform::affine(rng.next_in(0.1, 3.0), rng.next_in(-1, 1)),
          sp, j, r);
      CHECK(e.max_excluded_below <= e.min_inner);
      CHECK(e.min_inner <= e.max_inner);
      CHECK(e.max_inner <= e.min_excluded_above);
    }
  }
}

TEST_CASE("spectral mapping: eigenvalues map through p, eigenvectors persist") {
  SplitMix64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.next_below(9);
    const SymMatrix m = dkbtest::random_sym(rng, n);
    std::vector<double> coeffs(1 + rng.next_below(4));
    for (auto& c : coeffs) c = rng.next_in(-2.0, 2.0);
    if (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.back() = 1.0;
    const PolynomialTransform p{coeffs};

    const Spectrum sm = eig_sym(m);
    const SymMatrix pm = eval_matrix(p, m);
    const Spectrum spm = eig_sym(pm);

    const auto ts = transform_spectrum(p, sm);
    const auto expect = dkbtest::sorted(ts.values);
    const double scale = std::max(1.0, pm.max_abs());
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(spm.eigenvalues[i] - expect[i]) <= 1e-7 * scale);

    // When the transformed values stay well separated, each eigenvector of m
    // pairs with the eigenvector of p(m) at its value's sorted position,
    // even for non-monotone p.
    std::vector<std::size_t> pos(n);
    std::iota(pos.begin(), pos.end(), 0);
    std::stable_sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
      return ts.values[a] < ts.values[b];
    });
    bool simple = true;
    for (std::size_t i = 1; i < n; ++i)
      if (expect[i] - expect[i - 1] <= 1e-4 * scale) simple = false;
    if (!simple) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const auto wb = EigenvectorBlock::from_spectrum(sm, pos[i], 1);
      const auto vb = EigenvectorBlock::from_spectrum(spm, i, 1);
      CHECK(rho2(wb, vb) <= 1e-7);
    }
  }
}

TEST_CASE("strictly monotone transforms preserve every eigenvector block") {
  SplitMix64 rng(33);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 3 + rng.next_below(6);
    // Controlled, well-gapped spectrum.
    std::vector<double> vals(n);
    double acc = rng.next_in(-2.0, -1.0);
    for (auto& v : vals) {
      v = acc;
      acc += rng.next_in(0.5, 1.5);
    }
    const SymMatrix m = dkbtest::sym_with_spectrum(rng, vals);

    // Strictly increasing cubic: p'(t) = 3 a t^2 + b > 0 for a, b > 0.
    const double a = rng.next_in(0.1, 1.0);
    const double b = rng.next_in(0.1, 1.0);
    const PolynomialTransform p({rng.next_in(-1.0, 1.0), b, 0.0, a});

    const Spectrum sm = eig_sym(m);
    const Spectrum spm = eig_sym(eval_matrix(p, m));
    for (std::size_t r = 1; r <= n; ++r) {
      for (std::size_t j = 0; j + r <= n; ++j) {
        const auto wb = EigenvectorBlock::from_spectrum(sm, j, r);
        const auto vb = EigenvectorBlock::from_spectrum(spm, j, r);
        CHECK(rho1(wb, vb) <= 1e-7);
      }
    }
  }
}
