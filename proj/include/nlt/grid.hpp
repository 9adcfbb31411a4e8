#pragma once

#include <cstddef>
#include <vector>

namespace nlt {

/// Uniform periodic grid on [-L/2, L/2) with N nodes, N a power of two >= 16.
///
/// Spectral data uses the half-complex (r2c) layout: index j in [0, N/2]
/// carries wavenumber k_j = 2*pi*j/L; negative wavenumbers are implied by
/// Hermitian symmetry.
class Grid {
 public:
  Grid(std::size_t n_points, double length);

  std::size_t size() const { return n_; }
  double length() const { return length_; }
  double dx() const { return length_ / static_cast<double>(n_); }

  /// x_m = -L/2 + m L / N.
  double node(std::size_t m) const;
  std::vector<double> nodes() const;

  /// Number of stored spectral coefficients, N/2 + 1.
  std::size_t modes() const { return n_ / 2 + 1; }
  /// 2*pi/L.
  double k_fundamental() const;
  /// Nonnegative wavenumber of half-spectrum index j.
  double wavenumber(std::size_t j) const { return k_fundamental() * static_cast<double>(j); }
  double k_nyquist() const { return wavenumber(n_ / 2); }

  /// Signed wavenumber of full-spectrum index j in [0, N): j < N/2 maps to
  /// k_j, j >= N/2 maps to k_{j-N}. Antisymmetric apart from the Nyquist slot.
  double signed_wavenumber(std::size_t j) const;

  bool operator==(const Grid& o) const { return n_ == o.n_ && length_ == o.length_; }

 private:
  std::size_t n_;
  double length_;
};

}  // namespace nlt
