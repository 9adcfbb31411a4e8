#pragma once
// Data-parallel inner loops shared by the spectral, quadrature and
// diagnostic code. Every kernel has a scalar reference implementation;
// vector variants (AVX2+FMA on x86-64, NEON on aarch64) are selected once at
// startup and must agree with the scalar reference to rounding.
//
// Selection order: NLT_KERNELS environment variable ("scalar", "avx2",
// "neon", "auto"), then the best variant the CPU supports.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace nlt::simd {

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend b);

/// Raw pointer signatures keep the per-ISA translation units free of
/// std::span template instantiations compiled with different flags.
struct KernelTable {
  Backend backend;

  /// c[i] *= m[i] for complex c and real m.
  void (*scale_complex)(std::complex<double>* c, const double* m, std::size_t n);

  /// out[i] = ca[i] * a[i] + cb[i] * b[i], complex data with real coefficients.
  void (*combine_complex)(std::complex<double>* out, const std::complex<double>* a,
                          const double* ca, const std::complex<double>* b,
                          const double* cb, std::size_t n);

  /// out[i] = a[i] * b[i].
  void (*multiply)(double* out, const double* a, const double* b, std::size_t n);

  /// sum_i w[i] * f[i]^2.
  double (*weighted_sum_squares)(const double* w, const double* f, std::size_t n);

  /// max_i |f[i]|.
  double (*max_abs)(const double* f, std::size_t n);

  /// acc[i] += coeff * (2 f[i] - f[i+m] - f[i-m]).  `f` points at the first
  /// node of a buffer padded by at least m entries on both sides.
  void (*accumulate_second_difference)(double* acc, const double* f, std::ptrdiff_t m,
                                       double coeff, std::size_t n);

  /// acc[i] += coeff * ((f[i]-f[i+m])^2 + (f[i]-f[i-m])^2), same padding.
  void (*accumulate_squared_difference)(double* acc, const double* f, std::ptrdiff_t m,
                                        double coeff, std::size_t n);

  /// acc[i] += coeff * ((w[i]-w[i+m]) f[i+m] + (w[i]-w[i-m]) f[i-m]).
  void (*accumulate_commutator_difference)(double* acc, const double* w, const double* f,
                                           std::ptrdiff_t m, double coeff, std::size_t n);

  /// out[i] = scale * (p[i+hi] - p[i+lo]).  `p` is padded for both offsets.
  void (*window_difference)(double* out, const double* p, std::ptrdiff_t lo,
                            std::ptrdiff_t hi, double scale, std::size_t n);

  /// a[i] = max(a[i], b[i]).
  void (*max_inplace)(double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_kernels();
#endif
#if defined(__aarch64__)
const KernelTable& neon_kernels();
#endif

/// Backends this binary contains and the running CPU supports.
std::vector<Backend> available_backends();

/// Currently active table.
const KernelTable& kernels();

/// Switch the active table. Throws std::invalid_argument when the backend is
/// unavailable. Intended for tests and benchmarks; not thread-safe against
/// concurrent kernel use.
void set_backend(Backend b);

Backend active_backend();

}  // namespace nlt::simd
