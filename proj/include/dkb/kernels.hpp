#pragma once

#include <cstddef>
#include <vector>

namespace dkb::kern {

// Inner-loop kernels used by the dense solvers. Every backend must produce
// bit-identical output for identical input:
//   - elementwise kernels evaluate plain mul/add (no fused contraction),
//   - reductions accumulate four interleaved partial sums combined as
//     (s0 + s1) + (s2 + s3), remainder folded in sequentially afterwards.
// The scalar implementation is the reference; SIMD variants are selected at
// runtime and checked against it in the kernel equivalence tests.

struct KernelTable {
  // [x, y] <- [c*x - s*y, s*x + c*y]   (plane rotation of two rows)
  void (*rot2)(double* x, double* y, std::size_t n, double c, double s);
  // y += a*x
  void (*axpy)(double* y, const double* x, std::size_t n, double a);
  // y -= a*u + b*v   (symmetric rank-2 row update)
  void (*rank2_sub)(double* y, const double* u, const double* v, std::size_t n,
                    double a, double b);
  // out = a*x - y
  void (*scale_sub)(double* out, const double* x, const double* y,
                    std::size_t n, double a);
  // sum_i x[i]*y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_i x[i]^2
  double (*sumsq)(const double* x, std::size_t n);
  const char* name;
};

enum class Backend { scalar, avx2, neon };

/// Kernel table currently in use. Resolved once: explicit request via the
/// DKBOUND_KERNELS environment variable (scalar|avx2|neon), otherwise the
/// widest backend this host supports.
const KernelTable& active();
Backend active_backend();

/// Force a backend (used by the equivalence tests). Returns false and leaves
/// the active table unchanged if the host does not support it.
bool set_backend(Backend b);

/// Table for an explicit backend, or nullptr if unsupported on this host.
const KernelTable* table_for(Backend b);

/// Backends usable on this host (always contains Backend::scalar).
std::vector<Backend> supported_backends();

const char* backend_name(Backend b);

}  // namespace dkb::kern
