#include "dkb/kernels.hpp"

// Reference kernels. Plain loops; the blocked-4 accumulation in dot/sumsq is
// the canonical summation order every SIMD backend reproduces exactly.

namespace dkb::kern {

namespace {

void rot2_scalar(double* x, double* y, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

void axpy_scalar(double* y, const double* x, std::size_t n, double a) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void rank2_sub_scalar(double* y, const double* u, const double* v,
                      std::size_t n, double a, double b) {
  for (std::size_t i = 0; i < n; ++i) y[i] -= a * u[i] + b * v[i];
}

void scale_sub_scalar(double* out, const double* x, const double* y,
                      std::size_t n, double a) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] - y[i];
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  double total = (s0 + s1) + (s2 + s3);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

double sumsq_scalar(const double* x, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * x[i];
    s1 += x[i + 1] * x[i + 1];
    s2 += x[i + 2] * x[i + 2];
    s3 += x[i + 3] * x[i + 3];
  }
  double total = (s0 + s1) + (s2 + s3);
  for (; i < n; ++i) total += x[i] * x[i];
  return total;
}

}  // namespace

extern const KernelTable kScalarTable;
const KernelTable kScalarTable = {
    rot2_scalar,  axpy_scalar,  rank2_sub_scalar,
    scale_sub_scalar, dot_scalar, sumsq_scalar,
    "scalar",
};

}  // namespace dkb::kern
