#pragma once
// Direct singular-integral evaluation of Lambda^alpha and of the commutator
// kernel. These are slow oracles for the multiplier route, not production
// operators.
//
// Both integrands vanish to second order at z = 0 after symmetrizing z <-> -z,
// so they are written as G(z) z^{1-a} with G = D / z^2 bounded, and G is
// integrated by a product trapezoid rule whose moments against z^{1-a} are
// exact. The first cell [0, h] uses G(h). The outer limit may run over
// periodic images of the box; the remaining tail is closed analytically from
// the box mean.

#include <cstddef>
#include <vector>

#include "nlt/field.hpp"

namespace nlt {

struct PvQuadraturePlan {
  /// Outer limit Y_max in units of the box length. Values above 0.5 wrap
  /// through periodic images.
  double outer_extent = 4.0;
  /// Add the mean-field estimate of the integral beyond Y_max.
  bool tail_correction = true;
  /// Reject data that is not small for |x| > boundary_fraction * L.
  bool check_boundary = true;
  double boundary_fraction = 0.45;
  double boundary_tolerance = 1e-8;
};

/// Throws DomainError if max_{|x| > fraction L} |f| > tol * max |f|.
void require_boundary_decay(const Field& f, double fraction, double tol);

/// Periodic extension of f with `pad` entries on both sides.
std::vector<double> periodic_padded(const Field& f, std::size_t pad);

/// Per-offset coefficients c_m (m = 1..M, stored at index m-1) such that
/// int_0^{Mh} D(z) z^{-1-a} dz ~ sum_m c_m D(mh) for D vanishing like z^2.
std::vector<double> pv_offset_weights(double h, std::size_t offsets, double a);

/// Lambda^alpha f by quadrature of C_alpha int_0^inf (2f(x)-f(x+z)-f(x-z)) z^{-1-alpha} dz.
Field fractional_laplacian_pv(const Field& f, double alpha, const PvQuadraturePlan& plan = {});

/// C_s int (w(x) - w(y)) f(y) |x-y|^{-1-s} dy, which equals [Lambda^s, w] f.
Field commutator_kernel_pv(const Field& w, const Field& f, double s,
                           const PvQuadraturePlan& plan = {});

}  // namespace nlt
