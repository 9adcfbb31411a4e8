// Scalar reference kernels. These define the semantics the vector variants
// are tested against.

#include "nlt/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace nlt::simd {
namespace {

void scale_complex(std::complex<double>* c, const double* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) c[i] *= m[i];
}

void combine_complex(std::complex<double>* out, const std::complex<double>* a,
                     const double* ca, const std::complex<double>* b, const double* cb,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = ca[i] * a[i] + cb[i] * b[i];
}

void multiply(double* out, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

double weighted_sum_squares(const double* w, const double* f, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * f[i] * f[i];
  return s;
}

double max_abs(const double* f, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(f[i]));
  return m;
}

void accumulate_second_difference(double* acc, const double* f, std::ptrdiff_t m,
                                  double coeff, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::ptrdiff_t>(i);
    acc[i] += coeff * (2.0 * f[k] - f[k + m] - f[k - m]);
  }
}

void accumulate_squared_difference(double* acc, const double* f, std::ptrdiff_t m,
                                   double coeff, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::ptrdiff_t>(i);
    const double a = f[k] - f[k + m];
    const double b = f[k] - f[k - m];
    acc[i] += coeff * (a * a + b * b);
  }
}

void accumulate_commutator_difference(double* acc, const double* w, const double* f,
                                      std::ptrdiff_t m, double coeff, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::ptrdiff_t>(i);
    acc[i] += coeff * ((w[k] - w[k + m]) * f[k + m] + (w[k] - w[k - m]) * f[k - m]);
  }
}

void window_difference(double* out, const double* p, std::ptrdiff_t lo, std::ptrdiff_t hi,
                       double scale, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::ptrdiff_t>(i);
    out[i] = scale * (p[k + hi] - p[k + lo]);
  }
}

void max_inplace(double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] = std::max(a[i], b[i]);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      Backend::scalar,
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
