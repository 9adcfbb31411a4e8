#pragma once
// Fourier multiplier operators on periodic fields.
//
// Conventions: H has symbol +i sgn(k), so d/dx H = -Lambda. Lambda^s has
// symbol |k|^s with the zero mode annihilated for every s. Odd symbols are
// zeroed at the Nyquist slot, where a real field cannot carry them.

#include <vector>

#include "nlt/field.hpp"

namespace nlt {

/// Exact 1D constant C_a in Lambda^a f(x) = C_a PV int (f(x)-f(y))/|x-y|^{1+a} dy.
double fractional_laplacian_constant(double alpha);

/// |k_j|^s on the half spectrum, zero at j = 0.
std::vector<double> abs_k_power(const Grid& g, double s);

Field hilbert_transform(const Field& f);
/// Lambda^alpha with alpha in [0, 2). Throws ParameterError otherwise.
Field fractional_laplacian(const Field& f, double alpha);
/// Lambda^s for any real s (diagnostics need s beyond 2).
Field fractional_power(const Field& f, double s);
/// d^order/dx^order, order >= 0.
Field derivative(const Field& f, int order = 1);

void hilbert_in_place(SpectralField& F);
void multiply_in_place(SpectralField& F, const std::vector<double>& symbol);
void derivative_in_place(SpectralField& F, int order = 1);

/// Highest retained index under the 2/3 rule: floor(N/3).
std::size_t dealias_cutoff(const Grid& g);
/// Zero every mode with j > floor(N/3). Idempotent.
void dealias_in_place(SpectralField& F);
SpectralField dealias(SpectralField F);
Field dealias(const Field& f);

/// Zero-mean antiderivative-like potential v with v_x = H f: symbol 1/|k|
/// applied to f (v-hat = f-hat / |k|, zero mode 0).
Field velocity_potential(const Field& f);

}  // namespace nlt
