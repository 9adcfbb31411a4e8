// NEON (AdvSIMD, float64x2) kernels for aarch64.

#include "nlt/simd/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

namespace nlt::simd {
namespace {

void scale_complex(std::complex<double>* c, const double* m, std::size_t n) {
  auto* p = reinterpret_cast<double*>(c);
  for (std::size_t i = 0; i < n; ++i) {
    vst1q_f64(p + 2 * i, vmulq_n_f64(vld1q_f64(p + 2 * i), m[i]));
  }
}

void combine_complex(std::complex<double>* out, const std::complex<double>* a,
                     const double* ca, const std::complex<double>* b, const double* cb,
                     std::size_t n) {
  auto* po = reinterpret_cast<double*>(out);
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t r = vfmaq_n_f64(vmulq_n_f64(vld1q_f64(pa + 2 * i), ca[i]),
                                      vld1q_f64(pb + 2 * i), cb[i]);
    vst1q_f64(po + 2 * i, r);
  }
}

void multiply(double* out, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

double weighted_sum_squares(const double* w, const double* f, std::size_t n) {
  float64x2_t s0 = vdupq_n_f64(0.0);
  float64x2_t s1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t f0 = vld1q_f64(f + i);
    const float64x2_t f1 = vld1q_f64(f + i + 2);
    s0 = vfmaq_f64(s0, vmulq_f64(vld1q_f64(w + i), f0), f0);
    s1 = vfmaq_f64(s1, vmulq_f64(vld1q_f64(w + i + 2), f1), f1);
  }
  double s = vaddvq_f64(vaddq_f64(s0, s1));
  for (; i < n; ++i) s += w[i] * f[i] * f[i];
  return s;
}

double max_abs(const double* f, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(f + i)));
  double r = vmaxvq_f64(m);
  for (; i < n; ++i) r = std::max(r, std::abs(f[i]));
  return r;
}

void accumulate_second_difference(double* acc, const double* f, std::ptrdiff_t m,
                                  double coeff, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const double* p = f + i;
    const float64x2_t d = vsubq_f64(
        vsubq_f64(vmulq_n_f64(vld1q_f64(p), 2.0), vld1q_f64(p + m)), vld1q_f64(p - m));
    vst1q_f64(acc + i, vfmaq_n_f64(vld1q_f64(acc + i), d, coeff));
  }
  for (; i < n; ++i) {
    const auto k = static_cast<std::ptrdiff_t>(i);
    acc[i] += coeff * (2.0 * f[k] - f[k + m] - f[k - m]);
  }
}

void accumulate_squared_difference(double* acc, const double* f, std::ptrdiff_t m,
                                   double coeff, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const double* p = f + i;
    const float64x2_t x = vld1q_f64(p);
    const float64x2_t a = vsubq_f64(x, vld1q_f64(p + m));
    const float64x2_t b = vsubq_f64(x, vld1q_f64(p - m));
    const float64x2_t s = vfmaq_f64(vmulq_f64(b, b), a, a);
    vst1q_f64(acc + i, vfmaq_n_f64(vld1q_f64(acc + i), s, coeff));
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
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const double* pw = w + i;
    const double* pf = f + i;
    const float64x2_t w0 = vld1q_f64(pw);
    const float64x2_t up = vmulq_f64(vsubq_f64(w0, vld1q_f64(pw + m)), vld1q_f64(pf + m));
    const float64x2_t s = vfmaq_f64(up, vsubq_f64(w0, vld1q_f64(pw - m)), vld1q_f64(pf - m));
    vst1q_f64(acc + i, vfmaq_n_f64(vld1q_f64(acc + i), s, coeff));
  }
  for (; i < n; ++i) {
    const auto k = static_cast<std::ptrdiff_t>(i);
    acc[i] += coeff * ((w[k] - w[k + m]) * f[k + m] + (w[k] - w[k - m]) * f[k - m]);
  }
}

void window_difference(double* out, const double* p, std::ptrdiff_t lo, std::ptrdiff_t hi,
                       double scale, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(p + i + hi), vld1q_f64(p + i + lo));
    vst1q_f64(out + i, vmulq_n_f64(d, scale));
  }
  for (; i < n; ++i) {
    const auto k = static_cast<std::ptrdiff_t>(i);
    out[i] = scale * (p[k + hi] - p[k + lo]);
  }
}

void max_inplace(double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(a + i, vmaxq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) a[i] = std::max(a[i], b[i]);
}

}  // namespace

const KernelTable& neon_kernels() {
  static const KernelTable table{
      Backend::neon,
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

#endif
