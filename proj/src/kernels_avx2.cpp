#include "dkb/kernels.hpp"

// AVX2 kernels. Compiled only on x86-64 (this translation unit gets -mavx2);
// selected at runtime after a cpuid check. Multiplies and adds are kept
// separate (no FMA) so results match the scalar reference bit for bit, and
// reductions use one 4-lane accumulator whose lanes are the scalar
// reference's four partial sums.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace dkb::kern {

namespace {

void rot2_avx2(double* x, double* y, std::size_t n, double c, double s) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_sub_pd(_mm256_mul_pd(vc, vx),
                                          _mm256_mul_pd(vs, vy)));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_mul_pd(vs, vx),
                                          _mm256_mul_pd(vc, vy)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

void axpy_avx2(double* y, const double* x, std::size_t n, double a) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y + i);
    const __m256d vx = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void rank2_sub_avx2(double* y, const double* u, const double* v,
                    std::size_t n, double a, double b) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y + i);
    const __m256d vu = _mm256_loadu_pd(u + i);
    const __m256d vv = _mm256_loadu_pd(v + i);
    const __m256d t =
        _mm256_add_pd(_mm256_mul_pd(va, vu), _mm256_mul_pd(vb, vv));
    _mm256_storeu_pd(y + i, _mm256_sub_pd(vy, t));
  }
  for (; i < n; ++i) y[i] -= a * u[i] + b * v[i];
}

void scale_sub_avx2(double* out, const double* x, const double* y,
                    std::size_t n, double a) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_mul_pd(va, vx), vy));
  }
  for (; i < n; ++i) out[i] = a * x[i] - y[i];
}

inline double reduce_lanes(__m256d acc) {
  // (s0 + s1) + (s2 + s3), matching the scalar reference's combine tree.
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const double s01 = _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
  const double s23 = _mm_cvtsd_f64(hi) + _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi));
  return s01 + s23;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i),
                                           _mm256_loadu_pd(y + i)));
  }
  double total = reduce_lanes(acc);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

double sumsq_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(vx, vx));
  }
  double total = reduce_lanes(acc);
  for (; i < n; ++i) total += x[i] * x[i];
  return total;
}

}  // namespace

extern const KernelTable kAvx2Table;
const KernelTable kAvx2Table = {
    rot2_avx2,  axpy_avx2,  rank2_sub_avx2,
    scale_sub_avx2, dot_avx2, sumsq_avx2,
    "avx2",
};

}  // namespace dkb::kern

#endif  // x86_64
