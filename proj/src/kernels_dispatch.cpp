#include "dkb/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace dkb::kern {

extern const KernelTable kScalarTable;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable kAvx2Table;
#endif
#if defined(__aarch64__)
extern const KernelTable kNeonTable;
#endif

namespace {

bool host_supports(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Backend::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* raw_table(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &kScalarTable;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return &kAvx2Table;
#else
      return nullptr;
#endif
    case Backend::neon:
#if defined(__aarch64__)
      return &kNeonTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Backend widest_supported() {
  if (host_supports(Backend::avx2)) return Backend::avx2;
  if (host_supports(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

Backend resolve_initial() {
  if (const char* env = std::getenv("DKBOUND_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && host_supports(Backend::avx2))
      return Backend::avx2;
    if (std::strcmp(env, "neon") == 0 && host_supports(Backend::neon))
      return Backend::neon;
    // "auto" or anything unusable falls through to detection.
  }
  return widest_supported();
}

Backend g_backend = resolve_initial();

}  // namespace

const KernelTable& active() { return *raw_table(g_backend); }

Backend active_backend() { return g_backend; }

bool set_backend(Backend b) {
  if (!host_supports(b)) return false;
  g_backend = b;
  return true;
}

const KernelTable* table_for(Backend b) {
  return host_supports(b) ? raw_table(b) : nullptr;
}

std::vector<Backend> supported_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon})
    if (host_supports(b)) out.push_back(b);
  return out;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "unknown";
}

}  // namespace dkb::kern
