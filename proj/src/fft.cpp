#include "nlt/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace nlt::fft {
namespace {

struct Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// fftw planning is not thread-safe; execution with the new-array interface is.
const Plans& plans_for(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, Plans> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> r(n);
  std::vector<fftw_complex> c(n / 2 + 1);
  const int ni = static_cast<int>(n);
  Plans p;
  p.r2c = fftw_plan_dft_r2c_1d(ni, r.data(), c.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.c2r = fftw_plan_dft_c2r_1d(ni, c.data(), r.data(),
                               FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_DESTROY_INPUT);
  return cache.emplace(n, p).first->second;
}

}  // namespace

void forward(const double* in, std::complex<double>* out, std::size_t n) {
  const Plans& p = plans_for(n);
  // r2c does not write its input.
  fftw_execute_dft_r2c(p.r2c, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
  const double s = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j <= n / 2; ++j) out[j] *= s;
}

void inverse(const std::complex<double>* in, double* out, std::size_t n) {
  const Plans& p = plans_for(n);
  std::vector<std::complex<double>> scratch(in, in + n / 2 + 1);
  fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

}  // namespace nlt::fft

namespace nlt {

SpectralField forward_transform(const Field& f) {
  f.require_finite("transform input");
  SpectralField F(f.grid);
  fft::forward(f.values.data(), F.coeffs.data(), f.size());
  return F;
}

Field inverse_transform(const SpectralField& F) {
  Field f(F.grid);
  fft::inverse(F.coeffs.data(), f.values.data(), f.size());
  return f;
}

}  // namespace nlt
