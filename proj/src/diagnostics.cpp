#include "nlt/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "nlt/error.hpp"
#include "nlt/fft.hpp"
#include "nlt/maximal.hpp"
#include "nlt/parallel.hpp"
#include "nlt/pv_quadrature.hpp"
#include "nlt/simd/kernels.hpp"
#include "nlt/spectral_ops.hpp"

namespace nlt {

double energy_sobolev_index(double alpha) { return std::max(0.0, 1.5 - alpha); }

namespace {

// int w (Lambda^s f)^2 dx from the transform of f.
double weighted_power_sq(const SpectralField& F, double s, const Field& w) {
  SpectralField G = F;
  multiply_in_place(G, abs_k_power(F.grid, s));
  const Field v = inverse_transform(G);
  return F.grid.dx() * simd::kernels().weighted_sum_squares(w.values.data(), v.values.data(), v.size());
}

double weighted_sq(const Field& f, const Field& w) {
  return f.grid.dx() * simd::kernels().weighted_sum_squares(w.values.data(), f.values.data(), f.size());
}

}  // namespace

EnergyRecord energy_record(const Field& theta, const Weight& w, const SolverConfig& cfg, double time) {
  EnergyRecord r;
  r.time = time;
  r.k = energy_sobolev_index(cfg.alpha);
  if (!theta.finite()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.l2w = r.hkw = r.dissipation = r.dissipation_k = r.h2w = r.dissipation_2 = nan;
    r.sup_norm = r.grad_sup = nan;
    r.poisoned = true;
    return r;
  }
  const Field ws = w.sample(theta.grid);
  const SpectralField F = forward_transform(theta);
  const double a2 = 0.5 * cfg.alpha;
  r.l2w = weighted_sq(theta, ws);
  r.hkw = r.k > 0.0 ? r.l2w + weighted_power_sq(F, r.k, ws) : r.l2w;
  r.dissipation = weighted_power_sq(F, a2, ws);
  r.dissipation_k = r.k > 0.0 ? weighted_power_sq(F, r.k + a2, ws) : r.dissipation;
  r.h2w = r.l2w + weighted_power_sq(F, 2.0, ws);
  r.dissipation_2 = weighted_power_sq(F, 2.0 + a2, ws);
  r.sup_norm = theta.max_abs();
  SpectralField D = F;
  derivative_in_place(D, 1);
  r.grad_sup = inverse_transform(D).max_abs();
  return r;
}

std::vector<EnergyRecord> energy_series(const std::vector<TrajectoryState>& snapshots,
                                        const Weight& w, const SolverConfig& cfg) {
  std::vector<EnergyRecord> out(snapshots.size());
  parallel_for(snapshots.size(), [&](std::size_t i) {
    out[i] = energy_record(snapshots[i].theta, w, cfg, snapshots[i].time);
  });
  return out;
}

void write_energy_csv(const std::vector<EnergyRecord>& series, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  os.precision(17);
  os << "t,l2w,hkw,dissipation,sup,grad_sup\n";
  for (const auto& r : series) {
    os << r.time << ',' << r.l2w << ',' << r.hkw << ',' << r.dissipation << ',' << r.sup_norm << ','
       << r.grad_sup << '\n';
  }
  if (!os) throw Error("write failed: " + path);
}

RunRecord run_with_diagnostics(const SolverConfig& cfg, const Field& theta0, const Weight& w,
                               bool keep_snapshots) {
  std::vector<EnergyRecord> series;
  std::vector<TrajectoryState> snaps;
  RunSummary summary = run(cfg, theta0, [&](const TrajectoryState& s) {
    series.push_back(energy_record(s.theta, w, cfg, s.time));
    if (keep_snapshots) snaps.push_back(s);
  });
  return RunRecord{std::move(summary), std::move(series), std::move(snaps)};
}

// ---------------------------------------------------------------------------

CordobaReport check_cordoba_inequality(const Field& theta, double tol, double alpha) {
  theta.require_finite("Cordoba input");
  if (!(theta.min() > 0.0)) throw ParameterError("Cordoba inequality check needs min theta > 0");
  Field cube(theta.grid);
  Field sq(theta.grid);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    sq[i] = theta[i] * theta[i];
    cube[i] = sq[i] * theta[i];
  }
  const Field lhs = fractional_power(cube, alpha);
  const Field lt = fractional_power(theta, alpha);
  CordobaReport r;
  r.max_defect = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double d = lhs[i] - 3.0 * sq[i] * lt[i];
    if (d > r.max_defect) {
      r.max_defect = d;
      r.argmax_x = theta.grid.node(i);
    }
  }
  const double m = theta.max_abs();
  r.scale = m * m * m;
  r.passed = r.max_defect <= tol * r.scale;
  return r;
}

EnergyGrowthReport check_energy_growth(const std::vector<EnergyRecord>& series, double nu,
                                       EnergyNorm norm) {
  EnergyGrowthReport r;
  const std::size_t n = series.size();
  if (n < 3) return r;
  std::vector<double> E(n), D(n), t(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = series[i];
    if (s.poisoned) return r;
    t[i] = s.time;
    E[i] = norm == EnergyNorm::l2 ? s.l2w : s.hkw;
    D[i] = norm == EnergyNorm::l2 ? s.dissipation
                                   : (s.k > 0.0 ? s.dissipation + s.dissipation_k : s.dissipation);
    if (!(E[i] > 0.0)) return r;
  }
  r.fit_defined = true;
  r.c_fit = -std::numeric_limits<double>::infinity();
  double dint = 0.0, eint = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dt = t[i + 1] - t[i];
    if (!(dt > 0.0)) throw ParameterError("energy series times must be strictly increasing");
    const double rate = (E[i + 1] - E[i]) / dt + nu * (D[i] + D[i + 1]);
    const double c = rate / (0.5 * (E[i] + E[i + 1]));
    if (c > r.c_fit) {
      r.c_fit = c;
      r.argmax_interval = i;
    }
    dint += nu * (D[i] + D[i + 1]) * dt;
    eint += 0.5 * (E[i] + E[i + 1]) * dt;
  }
  r.worst_integral_ratio = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double bound = E[0] * std::exp(r.c_fit * (t[i] - t[0]));
    r.worst_integral_ratio = std::max(r.worst_integral_ratio, E[i] / bound);
  }
  r.integral_form_holds = r.worst_integral_ratio <= 1.0 + 1e-9;
  r.dissipation_integral = dint;
  r.budget = E[0] - E[n - 1] + r.c_fit * eint;
  r.integral_consistent = dint <= 1.05 * r.budget + 1e-300;
  return r;
}

MaximumPrincipleReport check_maximum_principle(const std::vector<EnergyRecord>& series,
                                               double rel_tol) {
  MaximumPrincipleReport r;
  if (series.empty()) {
    r.passed = true;
    return r;
  }
  r.initial_sup = series.front().sup_norm;
  r.max_sup = r.initial_sup;
  r.worst_time = series.front().time;
  bool ok = std::isfinite(r.initial_sup);
  for (const auto& s : series) {
    if (!std::isfinite(s.sup_norm)) ok = false;
    if (s.sup_norm > r.max_sup) {
      r.max_sup = s.sup_norm;
      r.worst_time = s.time;
    }
  }
  r.passed = ok && r.max_sup <= r.initial_sup * (1.0 + rel_tol);
  return r;
}

H2MonitorReport fit_h2_monitor(const std::vector<EnergyRecord>& series, double nu) {
  H2MonitorReport r;
  if (series.size() < 3) return r;
  for (const auto& s : series) {
    if (s.poisoned || !(s.h2w > 0.0)) return r;
  }
  r.fit_defined = true;
  r.max_residual = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    const auto& a = series[i];
    const auto& b = series[i + 1];
    const double dt = b.time - a.time;
    if (!(dt > 0.0)) throw ParameterError("energy series times must be strictly increasing");
    const double res = (b.h2w - a.h2w) / dt + nu * (a.dissipation_2 + b.dissipation_2);
    r.max_residual = std::max(r.max_residual, res);
    const double y = std::sqrt(0.5 * (a.h2w + b.h2w));
    const double pos = std::max(res, 0.0);
    r.c2 = std::max(r.c2, pos / std::pow(y, 2.0));
    r.c4 = std::max(r.c4, pos / std::pow(y, 4.0));
    r.c16_3 = std::max(r.c16_3, pos / std::pow(y, 16.0 / 3.0));
  }
  r.finite = std::isfinite(r.c2) && std::isfinite(r.c4) && std::isfinite(r.c16_3);
  return r;
}

PointwiseSobolevReport check_pointwise_sobolev_inequality(const Field& theta, double s) {
  if (!(s > 0.0 && s < 1.0)) throw ParameterError("pointwise Sobolev check needs s in (0, 1)");
  theta.require_finite("pointwise Sobolev input");
  const Grid& g = theta.grid;
  const std::size_t n = g.size();
  const auto& k = simd::kernels();

  // Left side: both half-lines out to 0.45 L.
  const auto offsets = static_cast<std::size_t>(std::llround(0.45 * static_cast<double>(n)));
  const std::vector<double> weights = pv_offset_weights(g.dx(), offsets, 2.0 * s);
  const std::vector<double> ext = periodic_padded(theta, offsets);
  Field lhs(g);
  for (std::size_t m = 1; m <= offsets; ++m) {
    k.accumulate_squared_difference(lhs.values.data(), ext.data() + offsets,
                                    static_cast<std::ptrdiff_t>(m), weights[m - 1], n);
  }
  for (double& v : lhs.values) v = std::sqrt(std::max(v, 0.0));

  // M(|theta - theta(x)|^2)(x) = sup_R [avg(theta^2) - 2 theta(x) avg(theta) + theta(x)^2].
  const Field sq = pointwise(theta, theta);
  Field m1(g);
  for (std::size_t R : maximal_radii(g)) {
    const Field a1 = window_average(theta, R);
    const Field a2 = window_average(sq, R);
    for (std::size_t i = 0; i < n; ++i) {
      const double v = a2[i] - 2.0 * theta[i] * a1[i] + sq[i];
      m1[i] = std::max(m1[i], v);
    }
  }
  const Field dx = derivative(theta);
  const Field m2 = maximal_function(pointwise(dx, dx));

  PointwiseSobolevReport r{s, 0.0, 0.0, false, lhs, Field(g)};
  for (std::size_t i = 0; i < n; ++i) {
    r.rhs[i] = std::pow(std::max(m1[i], 0.0), 0.5 * (1.0 - s)) * std::pow(std::max(m2[i], 0.0), 0.5 * s);
    if (r.rhs[i] > 0.0) {
      const double q = lhs[i] / r.rhs[i];
      if (q > r.fitted_constant) {
        r.fitted_constant = q;
        r.argmax_x = g.node(i);
      }
    } else if (lhs[i] > 0.0) {
      r.degenerate = true;
    }
  }
  return r;
}

}  // namespace nlt
