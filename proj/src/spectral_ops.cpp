#include "nlt/spectral_ops.hpp"

#include <cmath>
#include <numbers>

#include "nlt/error.hpp"
#include "nlt/fft.hpp"
#include "nlt/simd/kernels.hpp"

namespace nlt {

double fractional_laplacian_constant(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw ParameterError("singular-integral constant needs alpha in (0, 2)");
  }
  return alpha * std::pow(2.0, alpha - 1.0) * std::tgamma(0.5 * (1.0 + alpha)) /
         (std::sqrt(std::numbers::pi) * std::tgamma(1.0 - 0.5 * alpha));
}

std::vector<double> abs_k_power(const Grid& g, double s) {
  std::vector<double> m(g.modes(), 0.0);
  for (std::size_t j = 1; j < m.size(); ++j) m[j] = std::pow(g.wavenumber(j), s);
  return m;
}

void multiply_in_place(SpectralField& F, const std::vector<double>& symbol) {
  simd::kernels().scale_complex(F.coeffs.data(), symbol.data(), F.size());
}

void hilbert_in_place(SpectralField& F) {
  // i * sgn(k) for k > 0; DC and Nyquist vanish.
  const std::size_t last = F.size() - 1;
  F[0] = 0.0;
  for (std::size_t j = 1; j < last; ++j) F[j] = std::complex<double>(-F[j].imag(), F[j].real());
  F[last] = 0.0;
}

void derivative_in_place(SpectralField& F, int order) {
  if (order < 0) throw ParameterError("derivative order must be nonnegative");
  if (order == 0) return;
  const Grid& g = F.grid;
  const std::size_t last = F.size() - 1;
  const std::complex<double> unit = std::pow(std::complex<double>(0.0, 1.0), order);
  for (std::size_t j = 0; j < last; ++j) F[j] *= unit * std::pow(g.wavenumber(j), order);
  // (ik)^order at Nyquist is real only for even orders.
  F[last] = (order % 2 == 0) ? F[last] * std::pow(-g.k_nyquist() * g.k_nyquist(), order / 2)
                             : std::complex<double>(0.0);
}

namespace {

Field apply(const Field& f, void (*op)(SpectralField&)) {
  SpectralField F = forward_transform(f);
  op(F);
  return inverse_transform(F);
}

}  // namespace

Field hilbert_transform(const Field& f) { return apply(f, hilbert_in_place); }

Field fractional_power(const Field& f, double s) {
  SpectralField F = forward_transform(f);
  multiply_in_place(F, abs_k_power(f.grid, s));
  return inverse_transform(F);
}

Field fractional_laplacian(const Field& f, double alpha) {
  if (!(alpha >= 0.0 && alpha < 2.0)) throw ParameterError("alpha must lie in [0, 2)");
  return fractional_power(f, alpha);
}

Field derivative(const Field& f, int order) {
  SpectralField F = forward_transform(f);
  derivative_in_place(F, order);
  return inverse_transform(F);
}

std::size_t dealias_cutoff(const Grid& g) { return g.size() / 3; }

void dealias_in_place(SpectralField& F) {
  const std::size_t keep = dealias_cutoff(F.grid);
  for (std::size_t j = keep + 1; j < F.size(); ++j) F[j] = 0.0;
}

SpectralField dealias(SpectralField F) {
  dealias_in_place(F);
  return F;
}

Field dealias(const Field& f) { return apply(f, dealias_in_place); }

Field velocity_potential(const Field& f) {
  SpectralField F = forward_transform(f);
  multiply_in_place(F, abs_k_power(f.grid, -1.0));
  return inverse_transform(F);
}

}  // namespace nlt
