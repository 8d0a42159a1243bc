#include "dkb/kernels.hpp"

// NEON kernels for aarch64, where 128-bit vectors are baseline. Two f64x2
// accumulators stand in for the four scalar partial sums (lanes 0,1 and 2,3)
// so reductions reproduce the reference summation tree exactly.

#if defined(__aarch64__)

#include <arm_neon.h>

namespace dkb::kern {

namespace {

void rot2_neon(double* x, double* y, std::size_t n, double c, double s) {
  const float64x2_t vc = vdupq_n_f64(c);
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vx = vld1q_f64(x + i);
    const float64x2_t vy = vld1q_f64(y + i);
    vst1q_f64(x + i, vsubq_f64(vmulq_f64(vc, vx), vmulq_f64(vs, vy)));
    vst1q_f64(y + i, vaddq_f64(vmulq_f64(vs, vx), vmulq_f64(vc, vy)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

void axpy_neon(double* y, const double* x, std::size_t n, double a) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vy = vld1q_f64(y + i);
    const float64x2_t vx = vld1q_f64(x + i);
    vst1q_f64(y + i, vaddq_f64(vy, vmulq_f64(va, vx)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void rank2_sub_neon(double* y, const double* u, const double* v,
                    std::size_t n, double a, double b) {
  const float64x2_t va = vdupq_n_f64(a);
  const float64x2_t vb = vdupq_n_f64(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vy = vld1q_f64(y + i);
    const float64x2_t vu = vld1q_f64(u + i);
    const float64x2_t vv = vld1q_f64(v + i);
    vst1q_f64(y + i,
              vsubq_f64(vy, vaddq_f64(vmulq_f64(va, vu), vmulq_f64(vb, vv))));
  }
  for (; i < n; ++i) y[i] -= a * u[i] + b * v[i];
}

void scale_sub_neon(double* out, const double* x, const double* y,
                    std::size_t n, double a) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vx = vld1q_f64(x + i);
    const float64x2_t vy = vld1q_f64(y + i);
    vst1q_f64(out + i, vsubq_f64(vmulq_f64(va, vx), vy));
  }
  for (; i < n; ++i) out[i] = a * x[i] - y[i];
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    acc23 =
        vaddq_f64(acc23, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
  }
  const double s01 = vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1);
  const double s23 = vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1);
  double total = s01 + s23;
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

double sumsq_neon(const double* x, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t v0 = vld1q_f64(x + i);
    const float64x2_t v1 = vld1q_f64(x + i + 2);
    acc01 = vaddq_f64(acc01, vmulq_f64(v0, v0));
    acc23 = vaddq_f64(acc23, vmulq_f64(v1, v1));
  }
  const double s01 = vgetq_lane_f64(acc01, 0) + vgetq_lane_f64(acc01, 1);
  const double s23 = vgetq_lane_f64(acc23, 0) + vgetq_lane_f64(acc23, 1);
  double total = s01 + s23;
  for (; i < n; ++i) total += x[i] * x[i];
  return total;
}

}  // namespace

extern const KernelTable kNeonTable;
const KernelTable kNeonTable = {
    rot2_neon,  axpy_neon,  rank2_sub_neon,
    scale_sub_neon, dot_neon, sumsq_neon,
    "neon",
};

}  // namespace dkb::kern

#endif  // __aarch64__
