#include "nlt/simd/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace nlt::simd {
namespace {

bool cpu_supports(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
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

const KernelTable& table_for(Backend b) {
  switch (b) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2:
      return avx2_kernels();
#endif
#if defined(__aarch64__)
    case Backend::neon:
      return neon_kernels();
#endif
    default:
      return scalar_kernels();
  }
}

const KernelTable* initial_table() {
  const auto avail = available_backends();
  const char* env = std::getenv("NLT_KERNELS");
  const std::string want = env ? env : "auto";
  for (Backend b : avail) {
    if (backend_name(b) == want) return &table_for(b);
  }
  // "auto" or an unsupported request: best available, which is listed last.
  return &table_for(avail.back());
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> t{initial_table()};
  return t;
}

}  // namespace

std::string_view backend_name(Backend b) {
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

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
    if (cpu_supports(b)) out.push_back(b);
  }
  return out;
}

const KernelTable& kernels() { return *active().load(std::memory_order_acquire); }

void set_backend(Backend b) {
  const auto avail = available_backends();
  if (std::find(avail.begin(), avail.end(), b) == avail.end()) {
    throw std::invalid_argument("kernel backend not available: " + std::string(backend_name(b)));
  }
  active().store(&table_for(b), std::memory_order_release);
}

Backend active_backend() { return kernels().backend; }

}  // namespace nlt::simd
