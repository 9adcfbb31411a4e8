#include "nlt/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nlt/error.hpp"

namespace nlt {

Grid::Grid(std::size_t n_points, double length) : n_(n_points), length_(length) {
  if (n_ < 16 || (n_ & (n_ - 1)) != 0) {
    throw ParameterError("grid size must be a power of two >= 16, got " + std::to_string(n_));
  }
  if (!(length_ > 0.0) || !std::isfinite(length_)) {
    throw ParameterError("grid length must be positive and finite");
  }
}

double Grid::node(std::size_t m) const {
  return -0.5 * length_ + static_cast<double>(m) * dx();
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t m = 0; m < n_; ++m) x[m] = node(m);
  return x;
}

double Grid::k_fundamental() const { return 2.0 * std::numbers::pi / length_; }

double Grid::signed_wavenumber(std::size_t j) const {
  const auto n = static_cast<double>(n_);
  const auto jj = static_cast<double>(j);
  return k_fundamental() * (j < n_ / 2 ? jj : jj - n);
}

}  // namespace nlt
