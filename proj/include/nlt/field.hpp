#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "nlt/grid.hpp"

namespace nlt {

/// Real samples on the grid nodes.
struct Field {
  Grid grid;
  std::vector<double> values;

  explicit Field(const Grid& g) : grid(g), values(g.size(), 0.0) {}
  Field(const Grid& g, std::vector<double> v);

  static Field sample(const Grid& g, const std::function<double(double)>& f);
  static Field constant(const Grid& g, double c);

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }

  bool finite() const;
  /// Throws PoisonedFieldError naming `what` if any value is NaN or Inf.
  void require_finite(const char* what = "field") const;

  double max_abs() const;
  double min() const;
  double max() const;
  /// Trapezoid (= rectangle, periodic) integral over the box.
  double integral() const;
  double mean() const;

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double s);
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);
/// Pointwise product.
Field pointwise(const Field& a, const Field& b);

/// Half-spectrum coefficients of a real field, normalized so that a constant
/// c has zero-mode coefficient c and cos(k_j x) has coefficient 1/2 at j.
struct SpectralField {
  Grid grid;
  std::vector<std::complex<double>> coeffs;

  explicit SpectralField(const Grid& g) : grid(g), coeffs(g.modes()) {}

  std::size_t size() const { return coeffs.size(); }
  std::complex<double>& operator[](std::size_t j) { return coeffs[j]; }
  const std::complex<double>& operator[](std::size_t j) const { return coeffs[j]; }

  /// (1/L) * integral of f^2 recovered from the coefficients (Parseval).
  double mean_square() const;
};

}  // namespace nlt
