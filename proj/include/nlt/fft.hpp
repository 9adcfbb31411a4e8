#pragma once
// Real-to-complex transforms backed by FFTW. Plans are created once per size
// under a lock and executed through the new-array interface, so concurrent
// transforms of the same size are safe.

#include <complex>
#include <cstddef>

#include "nlt/field.hpp"

namespace nlt::fft {

/// Forward transform; output has n/2+1 coefficients divided by n.
void forward(const double* in, std::complex<double>* out, std::size_t n);
/// Inverse of `forward`. `in` is not modified.
void inverse(const std::complex<double>* in, double* out, std::size_t n);

}  // namespace nlt::fft

namespace nlt {

/// Throws PoisonedFieldError on non-finite input.
SpectralField forward_transform(const Field& f);
Field inverse_transform(const SpectralField& F);

}  // namespace nlt
