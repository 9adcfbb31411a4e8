// AVX2 + FMA kernels. Compiled with -mavx2 -mfma; only reached through the
// dispatcher after a CPUID check.

#include "nlt/simd/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace nlt::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

// [m0, m0, m1, m1] from two consecutive reals.
inline __m256d duplicate_pairs(const double* m) {
  const __m256d v = _mm256_castpd128_pd256(_mm_loadu_pd(m));
  return _mm256_permute4x64_pd(v, 0b01010000);
}

void scale_complex(std::complex<double>* c, const double* m, std::size_t n) {
  auto* p = reinterpret_cast<double*>(c);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(p + 2 * i);
    _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(v, duplicate_pairs(m + i)));
  }
  for (; i < n; ++i) c[i] *= m[i];
}

void combine_complex(std::complex<double>* out, const std::complex<double>* a,
                     const double* ca, const std::complex<double>* b, const double* cb,
                     std::size_t n) {
  auto* po = reinterpret_cast<double*>(out);
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d r = _mm256_fmadd_pd(duplicate_pairs(cb + i), vb,
                                      _mm256_mul_pd(duplicate_pairs(ca + i), va));
    _mm256_storeu_pd(po + 2 * i, r);
  }
  for (; i < n; ++i) out[i] = ca[i] * a[i] + cb[i] * b[i];
}

void multiply(double* out, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

double weighted_sum_squares(const double* w, const double* f, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d f0 = _mm256_loadu_pd(f + i);
    const __m256d f1 = _mm256_loadu_pd(f + i + 4);
    s0 = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), f0), f0, s0);
    s1 = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i + 4), f1), f1, s1);
  }
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) s += w[i] * f[i] * f[i];
  return s;
}

double max_abs(const double* f, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(f + i)));
  double r = hmax(m);
  for (; i < n; ++i) r = std::max(r, std::abs(f[i]));
  return r;
}

void accumulate_second_difference(double* acc, const double* f, std::ptrdiff_t m,
                                  double coeff, std::size_t n) {
  const __m256d c = _mm256_set1_pd(coeff);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const double* p = f + i;
    const __m256d d = _mm256_sub_pd(
        _mm256_fmsub_pd(two, _mm256_loadu_pd(p), _mm256_loadu_pd(p + m)), _mm256_loadu_pd(p - m));
    _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(c, d, _mm256_loadu_pd(acc + i)));
  }
  for (; i < n; ++i) {
    const auto k = static_cast<std::ptrdiff_t>(i);
    acc[i] += coeff * (2.0 * f[k] - f[k + m] - f[k - m]);
  }
}

void accumulate_squared_difference(double* acc, const double* f, std::ptrdiff_t m,
                                   double coeff, std::size_t n) {
  const __m256d c = _mm256_set1_pd(coeff);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const double* p = f + i;
    const __m256d x = _mm256_loadu_pd(p);
    const __m256d a = _mm256_sub_pd(x, _mm256_loadu_pd(p + m));
    const __m256d b = _mm256_sub_pd(x, _mm256_loadu_pd(p - m));
    const __m256d s = _mm256_fmadd_pd(a, a, _mm256_mul_pd(b, b));
    _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(c, s, _mm256_loadu_pd(acc + i)));
  }
  for (; i < n; ++i) {
    const auto k = static_cast<std::ptrdiff_t>(i);
    const double a = f[k] - f[k + m];
    const double b = f[k] - f[k - m];
    acc[i] += coeff * (a * a + b * b);
  }
}

void accumulate_commutator_difference(double* acc, const double* w, const double* f,
                                      std::ptrdiff_t m, double coeff, std::size_t n) {
  const __m256d c = _mm256_set1_pd(coeff);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const double* pw = w + i;
    const double* pf = f + i;
    const __m256d w0 = _mm256_loadu_pd(pw);
    const __m256d up = _mm256_mul_pd(_mm256_sub_pd(w0, _mm256_loadu_pd(pw + m)),
                                     _mm256_loadu_pd(pf + m));
    const __m256d s = _mm256_fmadd_pd(_mm256_sub_pd(w0, _mm256_loadu_pd(pw - m)),
                                      _mm256_loadu_pd(pf - m), up);
    _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(c, s, _mm256_loadu_pd(acc + i)));
  }
  for (; i < n; ++i) {
    const auto k = static_cast<std::ptrdiff_t>(i);
    acc[i] += coeff * ((w[k] - w[k + m]) * f[k + m] + (w[k] - w[k - m]) * f[k - m]);
  }
}

void window_difference(double* out, const double* p, std::ptrdiff_t lo, std::ptrdiff_t hi,
                       double scale, std::size_t n) {
  const __m256d s = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + i + hi), _mm256_loadu_pd(p + i + lo));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(s, d));
  }
  for (; i < n; ++i) {
    const auto k = static_cast<std::ptrdiff_t>(i);
    out[i] = scale * (p[k + hi] - p[k + lo]);
  }
}

void max_inplace(double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(a + i, _mm256_max_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) a[i] = std::max(a[i], b[i]);
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{
      Backend::avx2,
      scale_complex,
      combine_complex,
      multiply,
      weighted_sum_squares,
      max_abs,
      accumulate_second_difference,
      accumulate_squared_difference,
      accumulate_commutator_difference,
      window_difference,
      max_inplace,
  };
  return table;
}

}  // namespace nlt::simd
