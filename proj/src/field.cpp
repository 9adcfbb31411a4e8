#include "nlt/field.hpp"

#include <algorithm>
#include <cmath>

#include "nlt/error.hpp"
#include "nlt/simd/kernels.hpp"

namespace nlt {

Field::Field(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw ParameterError("field length " + std::to_string(values.size()) +
                         " does not match grid size " + std::to_string(grid.size()));
  }
}

Field Field::sample(const Grid& g, const std::function<double(double)>& f) {
  Field out(g);
  for (std::size_t m = 0; m < g.size(); ++m) out.values[m] = f(g.node(m));
  return out;
}

Field Field::constant(const Grid& g, double c) {
  Field out(g);
  std::fill(out.values.begin(), out.values.end(), c);
  return out;
}

bool Field::finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

void Field::require_finite(const char* what) const {
  if (!finite()) throw PoisonedFieldError(std::string(what) + " contains NaN or Inf");
}

double Field::max_abs() const { return simd::kernels().max_abs(values.data(), values.size()); }

double Field::min() const { return *std::min_element(values.begin(), values.end()); }

double Field::max() const { return *std::max_element(values.begin(), values.end()); }

double Field::integral() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.dx();
}

double Field::mean() const { return integral() / grid.length(); }

Field& Field::operator+=(const Field& o) {
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& v : values) v *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

Field pointwise(const Field& a, const Field& b) {
  Field out(a.grid);
  simd::kernels().multiply(out.values.data(), a.values.data(), b.values.data(), a.size());
  return out;
}

double SpectralField::mean_square() const {
  const std::size_t last = coeffs.size() - 1;
  double s = std::norm(coeffs[0]) + std::norm(coeffs[last]);
  for (std::size_t j = 1; j < last; ++j) s += 2.0 * std::norm(coeffs[j]);
  return s;
}

}  // namespace nlt
