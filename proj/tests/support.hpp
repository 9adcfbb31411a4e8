#pragma once

#include <cmath>
#include <random>

#include "nlt/fft.hpp"
#include "nlt/field.hpp"

namespace nlt::testing {

/// Random real field with energy only in 1 <= j <= jmax.
inline Field random_band_limited(const Grid& g, std::size_t jmax, unsigned seed,
                                 bool keep_mean = false) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  SpectralField F(g);
  for (std::size_t j = 1; j <= jmax && j < g.modes() - 1; ++j) F[j] = {n01(rng), n01(rng)};
  if (keep_mean) F[0] = n01(rng);
  return inverse_transform(F);
}

inline double max_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace nlt::testing
