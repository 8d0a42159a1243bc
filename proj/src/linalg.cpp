#include "dkb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dkb/errors.hpp"
#include "dkb/kernels.hpp"

namespace dkb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Off-diagonal Frobenius mass, squared.
double offdiag_sumsq(const Matrix& a) {
  const auto& k = kern::active();
  const std::size_t n = a.rows();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    acc += k.sumsq(a.row(i) + i + 1, n - i - 1);
  return 2.0 * acc;
}

/// Deterministic sign convention: largest-magnitude component positive,
/// first nonzero component deciding on a magnitude tie.
void fix_column_sign(Matrix& u, std::size_t col) {
  const std::size_t n = u.rows();
  double best = 0.0;
  std::size_t best_idx = 0;
  bool tie = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(u(i, col));
    if (a > best) {
      best = a;
      best_idx = i;
      tie = false;
    } else if (a == best && a > 0.0 && i != best_idx) {
      tie = true;
    }
  }
  double pivot = u(best_idx, col);
  if (tie) {
    for (std::size_t i = 0; i < n; ++i)
      if (u(i, col) != 0.0) {
        pivot = u(i, col);
        break;
      }
  }
  if (pivot < 0.0)
    for (std::size_t i = 0; i < n; ++i) u(i, col) = -u(i, col);
}

}  // namespace

Spectrum eig_sym(const SymMatrix& m) {
  if (!m.all_finite()) throw InvalidInput("eig_sym: non-finite entries");
  const std::size_t n = m.n();
  const auto& k = kern::active();

  Matrix a = m.to_matrix();
  // Eigenvectors accumulate as rows of vt; transposed on output.
  Matrix vt = Matrix::identity(n);

  const double norm_f = std::sqrt(k.sumsq(a.data(), n * n));
  const double off_target = 1e-12 * norm_f;

  if (norm_f > 0.0) {
    constexpr int kMaxSweeps = 60;
    int sweep = 0;
    while (std::sqrt(offdiag_sumsq(a)) > off_target) {
      if (++sweep > kMaxSweeps)
        throw ConvergenceFailure("eig_sym: Jacobi sweep budget exhausted");
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const double apq = a(p, q);
          if (apq == 0.0) continue;
          const double app = a(p, p);
          const double aqq = a(q, q);
          const double theta = 0.5 * (aqq - app) / apq;
          double t;
          if (std::abs(theta) > 1e150) {
            t = 0.5 / theta;
          } else {
            t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
            if (theta < 0.0) t = -t;
          }
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;

          // Rows p and q of J^T A; the 2x2 block is patched exactly after.
          k.rot2(a.row(p), a.row(q), n, c, s);
          a(p, p) = app - t * apq;
          a(q, q) = aqq + t * apq;
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          // Mirror the rotated rows into columns p, q (A stays symmetric).
          for (std::size_t i = 0; i < n; ++i) {
            if (i == p || i == q) continue;
            a(i, p) = a(p, i);
            a(i, q) = a(q, i);
          }
          k.rot2(vt.row(p), vt.row(q), n, c, s);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x) < a(y, y);
  });

  Spectrum s;
  s.n = n;
  s.eigenvalues.resize(n);
  s.eigenvectors = Matrix(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    s.eigenvalues[col] = a(src, src);
    for (std::size_t i = 0; i < n; ++i) s.eigenvectors(i, col) = vt(src, i);
    fix_column_sign(s.eigenvectors, col);
  }
  return s;
}

namespace {

/// Householder reduction to tridiagonal form; only the diagonal and
/// subdiagonal are returned. Works on contiguous rows of the trailing
/// block (the matrix stays symmetric, so the needed column is a row).
void tridiagonalize(const SymMatrix& m, std::vector<double>& diag,
                    std::vector<double>& sub) {
  const std::size_t n = m.n();
  const auto& k = kern::active();
  Matrix a = m.to_matrix();
  diag.assign(n, 0.0);
  sub.assign(n > 0 ? n - 1 : 0, 0.0);

  std::vector<double> v, p, w;
  for (std::size_t step = 0; step + 2 < n; ++step) {
    const std::size_t mlen = n - step - 1;
    const double* x = a.row(step) + step + 1;
    const double xnorm = std::sqrt(k.sumsq(x, mlen));
    diag[step] = a(step, step);
    if (xnorm == 0.0) {
      sub[step] = 0.0;
      continue;
    }
    const double alpha = (x[0] >= 0.0) ? -xnorm : xnorm;
    sub[step] = alpha;

    v.assign(x, x + mlen);
    v[0] -= alpha;
    const double vtv = k.sumsq(v.data(), mlen);
    if (vtv == 0.0) continue;

    // p = (2/v'v) * A22 * v ; w = p - (v'p / v'v) * v ; A22 -= v w' + w v'
    p.assign(mlen, 0.0);
    const double scale = 2.0 / vtv;
    for (std::size_t i = 0; i < mlen; ++i)
      p[i] = scale * k.dot(a.row(step + 1 + i) + step + 1, v.data(), mlen);
    const double vtp = k.dot(v.data(), p.data(), mlen);
    w = p;
    k.axpy(w.data(), v.data(), mlen, -vtp / vtv);
    for (std::size_t i = 0; i < mlen; ++i)
      k.rank2_sub(a.row(step + 1 + i) + step + 1, w.data(), v.data(), mlen,
                  v[i], w[i]);
  }
  if (n >= 2) {
    diag[n - 2] = a(n - 2, n - 2);
    sub[n - 2] = a(n - 2, n - 1);
  }
  if (n >= 1) diag[n - 1] = a(n - 1, n - 1);
}

/// Number of eigenvalues of the tridiagonal strictly below x
/// (Sturm sequence with pivot safeguarding).
int count_below(const std::vector<double>& diag, const std::vector<double>& sub,
                double x, double pivmin) {
  int cnt = 0;
  double q = diag[0] - x;
  if (q < 0.0) ++cnt;
  for (std::size_t i = 1; i < diag.size(); ++i) {
    if (std::abs(q) < pivmin) q = (q < 0.0) ? -pivmin : pivmin;
    q = diag[i] - x - sub[i - 1] * sub[i - 1] / q;
    if (q < 0.0) ++cnt;
  }
  return cnt;
}

double bisect_boundary(const std::vector<double>& diag,
                       const std::vector<double>& sub, double lo, double hi,
                       int want, double pivmin) {
  // Smallest x with count_below(x) >= want.
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(diag, sub, mid, pivmin) >= want)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

EigExtremes eig_extremes(const SymMatrix& m) {
  if (!m.all_finite()) throw InvalidInput("eig_extremes: non-finite entries");
  const std::size_t n = m.n();
  if (n == 1) return {m(0, 0), m(0, 0)};
  if (n == 2) {
    const double a = m(0, 0), b = m(0, 1), c = m(1, 1);
    const double mid = 0.5 * (a + c);
    const double rad = std::hypot(0.5 * (a - c), b);
    return {mid - rad, mid + rad};
  }

  std::vector<double> diag, sub;
  tridiagonalize(m, diag, sub);

  // Exactly diagonal (e.g. the zero matrix): the diagonal is the spectrum.
  bool diagonal = true;
  for (double b : sub)
    if (b != 0.0) diagonal = false;
  if (diagonal) {
    const auto [mn, mx] = std::minmax_element(diag.begin(), diag.end());
    return {*mn, *mx};
  }

  double lo = kInf, hi = -kInf, maxb2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(sub[i - 1]) : 0.0) +
                     (i + 1 < n ? std::abs(sub[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
    if (i + 1 < n) maxb2 = std::max(maxb2, sub[i] * sub[i]);
  }
  const double span = std::max(hi - lo, 1.0);
  lo -= 1e-3 * span;
  hi += 1e-3 * span;
  const double pivmin =
      std::numeric_limits<double>::min() * std::max(1.0, maxb2);

  const double lmin =
      bisect_boundary(diag, sub, lo, hi, 1, pivmin);
  const double lmax =
      bisect_boundary(diag, sub, lo, hi, static_cast<int>(n), pivmin);
  return {lmin, lmax};
}

double spectral_norm(const SymMatrix& m) {
  const EigExtremes e = eig_extremes(m);
  return std::max(std::abs(e.min), std::abs(e.max));
}

double frobenius_norm(const Matrix& m) {
  if (!m.all_finite()) throw InvalidInput("frobenius_norm: non-finite entries");
  return std::sqrt(kern::active().sumsq(m.data(), m.size()));
}

double frobenius_norm(const SymMatrix& m) {
  if (!m.all_finite()) throw InvalidInput("frobenius_norm: non-finite entries");
  return std::sqrt(kern::active().sumsq(m.data(), m.n() * m.n()));
}

namespace {

/// Fill the remaining columns of u (from `have` on) with an orthonormal
/// completion, deterministically from standard basis vectors.
void complete_columns(Matrix& u, std::size_t have) {
  const std::size_t n = u.rows();
  const std::size_t want = u.cols();
  std::size_t col = have;
  for (std::size_t e = 0; e < n && col < want; ++e) {
    std::vector<double> cand(n, 0.0);
    cand[e] = 1.0;
    for (std::size_t c = 0; c < col; ++c) {
      double proj = 0.0;
      for (std::size_t i = 0; i < n; ++i) proj += u(i, c) * cand[i];
      for (std::size_t i = 0; i < n; ++i) cand[i] -= proj * u(i, c);
    }
    double norm = 0.0;
    for (double t : cand) norm += t * t;
    norm = std::sqrt(norm);
    if (norm < 0.5) continue;
    for (std::size_t i = 0; i < n; ++i) u(i, col) = cand[i] / norm;
    ++col;
  }
}

}  // namespace

Svd svd_small(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0)
    throw InvalidInput("svd_small: empty matrix");
  if (!m.all_finite()) throw InvalidInput("svd_small: non-finite entries");

  // One-sided Jacobi on the column space: rotate column pairs until they are
  // mutually orthogonal. Works on the transposed copy so the columns are
  // contiguous rows for the kernels. Unlike a Gram-matrix route, this keeps
  // full absolute accuracy for singular values near zero, which the
  // subspace metrics need.
  const bool tall = m.rows() >= m.cols();
  Matrix at = tall ? m.transposed() : m;  // row i = i-th column of the tall side
  const std::size_t cols = at.rows();     // number of columns being rotated
  const std::size_t len = at.cols();      // their length
  Matrix vt = Matrix::identity(cols);

  const auto& k = kern::active();
  constexpr double kRelTol = 1e-15;
  constexpr int kMaxSweeps = 100;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    // Columns whose mass has collapsed to rounding noise are deflated:
    // orthogonalizing them against anything only chases that noise.
    double max_sq = 0.0;
    for (std::size_t p = 0; p < cols; ++p)
      max_sq = std::max(max_sq, k.sumsq(at.row(p), len));
    const double deflate_sq = max_sq * 1e-30;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        const double app = k.sumsq(at.row(p), len);
        const double aqq = k.sumsq(at.row(q), len);
        const double apq = k.dot(at.row(p), at.row(q), len);
        if (apq == 0.0 || app <= deflate_sq || aqq <= deflate_sq) continue;
        if (std::abs(apq) <= kRelTol * std::sqrt(app) * std::sqrt(aqq))
          continue;
        converged = false;
        const double tau = 0.5 * (aqq - app) / apq;
        double t = 1.0 / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        if (tau < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        k.rot2(at.row(p), at.row(q), len, c, s);
        k.rot2(vt.row(p), vt.row(q), cols, c, s);
      }
    }
  }
  if (!converged)
    throw ConvergenceFailure("svd_small: Jacobi sweep budget exhausted");

  std::vector<double> norms(cols);
  for (std::size_t i = 0; i < cols; ++i)
    norms[i] = std::sqrt(k.sumsq(at.row(i), len));
  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return norms[a] > norms[b];
  });

  Svd out;
  out.singular_values.resize(cols);
  Matrix left(len, cols);
  Matrix right(cols, cols);
  std::size_t have = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    const std::size_t src = order[c];
    out.singular_values[c] = norms[src];
    for (std::size_t i = 0; i < cols; ++i) right(i, c) = vt(src, i);
    if (norms[src] > 0.0) {
      for (std::size_t i = 0; i < len; ++i)
        left(i, c) = at(src, i) / norms[src];
      have = c + 1;
    }
  }
  complete_columns(left, have);

  if (tall) {
    out.u = std::move(left);
    out.v = std::move(right);
  } else {
    out.u = std::move(right);
    out.v = std::move(left);
  }
  return out;
}

}  // namespace dkb
