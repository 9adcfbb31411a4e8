#include "nlt/pv_quadrature.hpp"

#include <cmath>
#include <string>

#include "nlt/error.hpp"
#include "nlt/simd/kernels.hpp"
#include "nlt/spectral_ops.hpp"

namespace nlt {

void require_boundary_decay(const Field& f, double fraction, double tol) {
  const double half = fraction * f.grid.length();
  double edge = 0.0;
  for (std::size_t m = 0; m < f.size(); ++m) {
    if (std::abs(f.grid.node(m)) > half) edge = std::max(edge, std::abs(f[m]));
  }
  const double scale = f.max_abs();
  if (edge > tol * scale) {
    throw DomainError("field is not decaying near the box edge: |f| = " + std::to_string(edge) +
                      " beyond |x| > " + std::to_string(half));
  }
}

std::vector<double> pv_offset_weights(double h, std::size_t offsets, double a) {
  if (offsets == 0) throw ParameterError("quadrature needs at least one offset");
  // Moments in long double: b*I0 - I1 cancels to ~1/j relative.
  const long double p = 1.0L - a;
  const long double hl = h;
  auto moment = [&](long double lo, long double hi, long double q) {
    return (std::pow(hi, q + 1.0L) - std::pow(lo, q + 1.0L)) / (q + 1.0L);
  };
  std::vector<long double> wsum(offsets, 0.0L);
  wsum[0] = std::pow(hl, 2.0L - a) / (2.0L - a);
  for (std::size_t j = 1; j < offsets; ++j) {
    const long double lo = hl * j;
    const long double hi = hl * (j + 1);
    const long double i0 = moment(lo, hi, p);
    const long double i1 = moment(lo, hi, p + 1.0L);
    wsum[j - 1] += (hi * i0 - i1) / hl;
    wsum[j] += (i1 - lo * i0) / hl;
  }
  std::vector<double> c(offsets);
  for (std::size_t m = 0; m < offsets; ++m) {
    const long double z = hl * (m + 1);
    c[m] = static_cast<double>(wsum[m] / (z * z));
  }
  return c;
}

namespace {

std::size_t offset_count(const Grid& g, const PvQuadraturePlan& plan) {
  if (!(plan.outer_extent > 0.0)) throw ParameterError("outer_extent must be positive");
  const auto m = static_cast<std::size_t>(std::llround(plan.outer_extent * g.size()));
  return std::max<std::size_t>(m, 1);
}

}  // namespace

std::vector<double> periodic_padded(const Field& f, std::size_t pad) {
  const std::size_t n = f.size();
  std::vector<double> out(n + 2 * pad);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t src = (i + n - pad % n) % n;
    out[i] = f[src];
  }
  return out;
}

Field fractional_laplacian_pv(const Field& f, double alpha, const PvQuadraturePlan& plan) {
  f.require_finite("PV quadrature input");
  if (plan.check_boundary) require_boundary_decay(f, plan.boundary_fraction, plan.boundary_tolerance);
  const double c_alpha = fractional_laplacian_constant(alpha);
  const Grid& g = f.grid;
  const std::size_t offsets = offset_count(g, plan);
  const std::vector<double> weights = pv_offset_weights(g.dx(), offsets, alpha);
  const std::vector<double> ext = periodic_padded(f, offsets);
  const double* base = ext.data() + offsets;

  Field out(g);
  const auto& k = simd::kernels();
  for (std::size_t m = 1; m <= offsets; ++m) {
    k.accumulate_second_difference(out.values.data(), base, static_cast<std::ptrdiff_t>(m),
                                   weights[m - 1], g.size());
  }
  const double y_max = g.dx() * static_cast<double>(offsets);
  const double tail = plan.tail_correction ? 2.0 * std::pow(y_max, -alpha) / alpha : 0.0;
  const double fbar = f.mean();
  for (std::size_t i = 0; i < g.size(); ++i) {
    out[i] = c_alpha * (out[i] + tail * (f[i] - fbar));
  }
  return out;
}

Field commutator_kernel_pv(const Field& w, const Field& f, double s, const PvQuadraturePlan& plan) {
  if (!(w.grid == f.grid)) throw ParameterError("weight and field grids differ");
  f.require_finite("commutator input");
  w.require_finite("weight samples");
  if (plan.check_boundary) require_boundary_decay(f, plan.boundary_fraction, plan.boundary_tolerance);
  const double c_s = fractional_laplacian_constant(s);
  const Grid& g = f.grid;
  const std::size_t offsets = offset_count(g, plan);
  const std::vector<double> weights = pv_offset_weights(g.dx(), offsets, s);
  const std::vector<double> wext = periodic_padded(w, offsets);
  const std::vector<double> fext = periodic_padded(f, offsets);

  Field out(g);
  const auto& k = simd::kernels();
  for (std::size_t m = 1; m <= offsets; ++m) {
    k.accumulate_commutator_difference(out.values.data(), wext.data() + offsets,
                                       fext.data() + offsets, static_cast<std::ptrdiff_t>(m),
                                       weights[m - 1], g.size());
  }
  const double y_max = g.dx() * static_cast<double>(offsets);
  const double tail = plan.tail_correction ? 2.0 * std::pow(y_max, -s) / s : 0.0;
  const double fbar = f.mean();
  const double wfbar = pointwise(w, f).mean();
  for (std::size_t i = 0; i < g.size(); ++i) {
    out[i] = c_s * (out[i] + tail * (w[i] * fbar - wfbar));
  }
  return out;
}

}  // namespace nlt
