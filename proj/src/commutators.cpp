#include "nlt/commutators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "nlt/error.hpp"
#include "nlt/littlewood_paley.hpp"
#include "nlt/pv_quadrature.hpp"
#include "nlt/spectral_ops.hpp"

namespace nlt {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw ParameterError("alpha must lie in (0, 2)");
}

Field weight_samples(const Weight& w, const Grid& g) {
  return w.is_unit() ? Field::constant(g, 1.0) : w.sample(g);
}

}  // namespace

Field commutator_apply(const Field& f, const Weight& w, double alpha, bool check_boundary) {
  require_alpha(alpha);
  f.require_finite("commutator input");
  if (check_boundary) require_boundary_decay(f, 0.45, 1e-8);
  const Field ws = weight_samples(w, f.grid);
  const double s = 0.5 * alpha;
  return fractional_power(pointwise(ws, f), s) - pointwise(ws, fractional_power(f, s));
}

bool commutator_hypothesis_holds(double alpha, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) return false;
  if (alpha > 0.0 && alpha < 1.0) return lambda < 0.5 * alpha;
  return alpha > 1.0 && alpha < 2.0;
}

bool commutator_kernel_integrable(double alpha, double lambda) {
  const bool near = 0.5 * alpha < 1.0;  // |z|^{-alpha/2} on |z| <= 1
  const bool far = lambda < 0.5 * alpha;  // 1 - lambda + alpha/2 > 1 on |z| > 1
  return near && far;
}

void require_commutator_hypothesis(const Weight& w, double alpha) {
  require_alpha(alpha);
  if (w.is_unit()) return;
  const bool ok = alpha == 1.0 ? w.lambda() < 0.5 : commutator_hypothesis_holds(alpha, w.lambda());
  if (!ok) {
    throw ParameterError("commutator estimate needs lambda < alpha/2 when alpha <= 1 (lambda = " +
                         std::to_string(w.lambda()) + ", alpha = " + std::to_string(alpha) + ")");
  }
}

std::vector<CommutatorTrial> commutator_trials(const Grid& g, const CommutatorTrialPlan& plan) {
  const double L = g.length();
  const double edge = 0.45 * L;
  const double nw = plan.decay_widths;
  std::vector<CommutatorTrial> out;

  std::mt19937_64 rng(plan.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> n01;
  for (std::size_t t = 0; t < plan.random_trials; ++t) {
    struct Packet {
      double a, c, sigma, k, phase;
    };
    std::vector<Packet> packets(1 + t % 3);
    for (auto& p : packets) {
      p.sigma = 0.5 * std::pow(10.0, u(rng));  // [0.5, 5]
      const double reach = std::max(0.0, edge - nw * p.sigma);
      p.c = reach * (2.0 * u(rng) - 1.0);
      p.k = 6.0 * u(rng);
      p.phase = 2.0 * std::numbers::pi * u(rng);
      p.a = n01(rng);
    }
    out.push_back({"random_" + std::to_string(t), Field::sample(g, [&](double x) {
                     double v = 0.0;
                     for (const auto& p : packets) {
                       const double z = (x - p.c) / p.sigma;
                       v += p.a * std::exp(-0.5 * z * z) * std::cos(p.k * x + p.phase);
                     }
                     return v;
                   })});
  }
  if (!plan.adversarial) return out;

  auto packet = [&](double c, double sigma, double k) {
    return Field::sample(g, [=](double x) {
      const double z = (x - c) / sigma;
      return std::exp(-0.5 * z * z) * std::cos(k * (x - c));
    });
  };
  for (double sigma : {0.5, 1.0, 2.0, 4.0}) {
    for (double sign : {-1.0, 1.0}) {
      const double c = sign * std::max(0.0, edge - nw * sigma);
      out.push_back({"edge_bump_s" + std::to_string(sigma) + (sign > 0 ? "_right" : "_left"),
                     packet(c, sigma, 0.0)});
    }
  }
  for (double sigma : {1.0, 3.0}) {
    for (double k : {1.0, 3.0, 6.0}) {
      out.push_back({"packet_center_s" + std::to_string(sigma) + "_k" + std::to_string(k),
                     packet(0.0, sigma, k)});
      out.push_back({"packet_edge_s" + std::to_string(sigma) + "_k" + std::to_string(k),
                     packet(std::max(0.0, edge - nw * sigma), sigma, k)});
    }
  }
  const double wide = std::min(L / 40.0, edge / nw);
  out.push_back({"wide_bump", packet(0.0, wide, 0.0)});
  out.push_back({"dipole", Field::sample(g, [](double x) { return x * std::exp(-0.5 * x * x); })});
  return out;
}

double commutator_rayleigh_quotient(const Field& f, const Weight& w, double alpha) {
  const Field ws = weight_samples(w, f.grid);
  Field inv = ws;
  for (double& v : inv.values) v = 1.0 / v;
  const double num = weighted_l2_norm(commutator_apply(f, w, alpha), inv);
  const double den = weighted_l2_norm(f, ws);
  if (!(den > 0.0)) throw ParameterError("zero trial function");
  return num / den;
}

CommutatorReport commutator_norm_estimate(const Weight& w, double alpha, const Grid& g,
                                          const CommutatorTrialPlan& plan) {
  require_commutator_hypothesis(w, alpha);
  CommutatorReport r;
  r.alpha = alpha;
  r.lambda = w.is_unit() ? 0.0 : w.lambda();
  r.kappa = w.is_unit() ? 0 : w.kappa();
  for (const auto& t : commutator_trials(g, plan)) {
    const double q = commutator_rayleigh_quotient(t.f, w, alpha);
    if (!std::isfinite(q)) throw PoisonedFieldError("non-finite Rayleigh quotient in " + t.label);
    r.rayleigh_quotients.push_back(q);
    r.labels.push_back(t.label);
    if (q >= r.sup_estimate) {
      r.sup_estimate = q;
      r.argmax_label = t.label;
    }
  }
  r.refinement_trace.emplace_back(g.size(), r.sup_estimate);
  return r;
}

CommutatorReport commutator_norm_refinement(const Weight& w, double alpha, double length,
                                            const std::vector<std::size_t>& resolutions,
                                            const CommutatorTrialPlan& plan) {
  if (resolutions.empty()) throw ParameterError("no resolutions given");
  CommutatorReport last;
  std::vector<std::pair<std::size_t, double>> trace;
  for (std::size_t n : resolutions) {
    last = commutator_norm_estimate(w, alpha, Grid(n, length), plan);
    trace.emplace_back(n, last.sup_estimate);
  }
  last.refinement_trace = std::move(trace);
  return last;
}

double commutator_kernel_bound_constant(const Field& f, const Weight& w, double alpha,
                                        std::size_t stride) {
  const Grid& g = f.grid;
  const Field t = commutator_apply(f, w, alpha);
  const Field ws = weight_samples(w, g);
  const double lambda = w.is_unit() ? 0.0 : w.lambda();
  const double h = g.dx();
  const double near_exp = 0.5 * alpha;
  const double far_exp = 1.0 - lambda + 0.5 * alpha;
  const double self = 2.0 * std::pow(0.5 * h, 1.0 - near_exp) / (1.0 - near_exp);
  const std::size_t n = g.size();

  std::vector<double> src(n);
  for (std::size_t m = 0; m < n; ++m) src[m] = std::sqrt(ws[m]) * std::abs(f[m]);
  const double floor = 1e-12 * *std::max_element(src.begin(), src.end());

  double best = 0.0;
  for (std::size_t i = 0; i < n; i += std::max<std::size_t>(stride, 1)) {
    double conv = self * src[i];
    for (std::size_t m = 0; m < n; ++m) {
      if (m == i) continue;
      const std::size_t d = m > i ? m - i : i - m;
      const double z = h * static_cast<double>(std::min(d, n - d));
      const double chi = z <= 1.0 ? std::pow(z, -near_exp) : std::pow(z, -far_exp);
      conv += chi * src[m] * h;
    }
    if (conv <= floor) continue;
    best = std::max(best, std::abs(t[i]) / (std::sqrt(ws[i]) * conv));
  }
  return best;
}

// ---------------------------------------------------------------------------

double weight_fractional_laplacian(const Weight& w, double alpha, double x, double* error_estimate) {
  require_alpha(alpha);
  using boost::math::quadrature::gauss_kronrod;
  constexpr unsigned kDepth = 10;
  constexpr double kTol = 1e-10;
  const double w0 = w(x);
  const double w2 = w.deriv(x, 2);
  double err_total = 0.0;

  // |z| <= 1: substitute z = t^{1/(2-alpha)} so z^{1-alpha} dz = dt / (2 - alpha).
  auto near = [&](double t) {
    const double z = std::pow(t, 1.0 / (2.0 - alpha));
    if (z < 1e-4) return -w2;
    return (2.0 * w0 - w(x + z) - w(x - z)) / (z * z);
  };
  double err = 0.0;
  const double i_near = gauss_kronrod<double, 31>::integrate(near, 0.0, 1.0, kDepth, kTol, &err) /
                        (2.0 - alpha);
  err_total += err / (2.0 - alpha);

  // |z| > 1: the peak of w sits at z = |x|; break the range around it.
  auto far = [&](double z) { return (2.0 * w0 - w(x + z) - w(x - z)) * std::pow(z, -1.0 - alpha); };
  // Geometric cuts keep each piece within a factor 2 of its left end.
  std::vector<double> cuts{1.0};
  const double ax = std::abs(x);
  for (double c = 2.0; c < ax - 5.0; c *= 2.0) cuts.push_back(c);
  for (double c : {ax - 5.0, ax - 1.0, ax, ax + 1.0, ax + 5.0}) {
    if (c > cuts.back()) cuts.push_back(c);
  }
  for (double c = 2.0 * cuts.back(); cuts.size() < 64 && c < 4.0 * (ax + 5.0); c *= 2.0) cuts.push_back(c);
  double i_far = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    i_far += gauss_kronrod<double, 31>::integrate(far, cuts[k], cuts[k + 1], kDepth, kTol, &err);
    err_total += err;
  }
  // Tail: z = A s^{-1/alpha} turns z^{-1-alpha} dz into A^{-alpha} ds / alpha.
  const double A = cuts.back();
  auto tail = [&](double s) {
    const double z = A * std::pow(s, -1.0 / alpha);
    return 2.0 * w0 - w(x + z) - w(x - z);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  const double scale = std::pow(A, -alpha) / alpha;
  i_far += scale * ts.integrate(tail, 0.0, 1.0, kTol, &err);
  err_total += scale * err;

  const double c = fractional_laplacian_constant(alpha);
  if (error_estimate) *error_estimate = c * err_total;
  return c * (i_near + i_far);
}

WeightLaplacianReport verify_lambda_alpha_weight_bound(const Weight& w, double alpha,
                                                       const std::vector<double>& lengths,
                                                       std::size_t n_points) {
  require_alpha(alpha);
  if (lengths.empty()) throw ParameterError("no window lengths given");
  WeightLaplacianReport r;
  r.alpha = alpha;
  r.value_at_zero = weight_fractional_laplacian(w, alpha, 0.0);
  for (double L : lengths) {
    const Grid g(n_points, L);
    double sup = 0.0, arg = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) {
      const double x = g.node(m);
      double err = 0.0;
      const double v = weight_fractional_laplacian(w, alpha, x, &err);
      const double wx = w(x);
      r.max_error_estimate = std::max(r.max_error_estimate, err / wx);
      if (!std::isfinite(v) || err > 1e-6 * std::max(1.0, std::abs(v))) r.converged = false;
      const double ratio = std::abs(v) / wx;
      if (ratio > sup) {
        sup = ratio;
        arg = x;
      }
    }
    r.trace.emplace_back(L, sup);
    r.sup_ratio = sup;
    r.argmax_x = arg;
  }
  return r;
}

}  // namespace nlt
