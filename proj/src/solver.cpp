#include "nlt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nlt/error.hpp"
#include "nlt/fft.hpp"
#include "nlt/field_io.hpp"
#include "nlt/littlewood_paley.hpp"
#include "nlt/simd/kernels.hpp"
#include "nlt/spectral_ops.hpp"

namespace nlt {

using cvec = std::vector<std::complex<double>>;

std::string to_string(Scheme s) { return s == Scheme::etd2 ? "etd2" : "imex_bdf2"; }
std::string to_string(DtPolicy p) { return p == DtPolicy::fixed ? "fixed" : "cfl"; }

std::string to_string(Status s) {
  switch (s) {
    case Status::running:
      return "running";
    case Status::completed:
      return "completed";
    case Status::blowup_suspected:
      return "blowup_suspected";
    case Status::poisoned:
      return "poisoned";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "etd2") return Scheme::etd2;
  if (s == "imex_bdf2") return Scheme::imex_bdf2;
  throw ParameterError("unknown scheme: " + s);
}

DtPolicy dt_policy_from_string(const std::string& s) {
  if (s == "fixed") return DtPolicy::fixed;
  if (s == "cfl") return DtPolicy::cfl;
  throw ParameterError("unknown dt policy: " + s);
}

void SolverConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0)) throw ParameterError("alpha must lie in (0, 2)");
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw ParameterError("nu must be finite and >= 0");
  if (!std::isfinite(a_param)) throw ParameterError("a_param must be finite");
  (void)grid();  // validates n_points and length
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("dt must be positive");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw ParameterError("cfl_safety must lie in (0, 1]");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ParameterError("t_final must be >= 0");
  for (double p : probes) {
    if (!(p >= 0.0 && p <= t_final)) throw ParameterError("probe times must lie in [0, t_final]");
  }
  if (!(blowup.grad_threshold > 0.0)) throw ParameterError("grad_threshold must be positive");
  if (!(blowup.tail_fraction > 0.0)) throw ParameterError("tail_fraction must be positive");
  if (!(blowup.dt_min > 0.0)) throw ParameterError("dt_min must be positive");
}

std::vector<double> uniform_probes(double t_final, std::size_t intervals) {
  if (intervals == 0) throw ParameterError("probe interval count must be positive");
  std::vector<double> p(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    p[i] = t_final * static_cast<double>(i) / static_cast<double>(intervals);
  }
  p.back() = t_final;
  return p;
}

namespace {

struct Scratch {
  cvec a, b;
  std::vector<double> x, y, z;
};

// i k F, zero at Nyquist.
void ddx(const cvec& in, cvec& out, const Grid& g) {
  out.resize(in.size());
  const std::size_t last = in.size() - 1;
  for (std::size_t j = 0; j < last; ++j) {
    const double k = g.wavenumber(j);
    out[j] = {-k * in[j].imag(), k * in[j].real()};
  }
  out[last] = 0.0;
}

void hilbert(const cvec& in, cvec& out) {
  out.resize(in.size());
  const std::size_t last = in.size() - 1;
  out[0] = 0.0;
  for (std::size_t j = 1; j < last; ++j) out[j] = {-in[j].imag(), in[j].real()};
  out[last] = 0.0;
}

void truncate(cvec& F, std::size_t cutoff) {
  for (std::size_t j = cutoff + 1; j < F.size(); ++j) F[j] = 0.0;
}

// phi_1(z) = (e^z - 1)/z, phi_2(z) = (e^z - 1 - z)/z^2 without cancellation.
void phi_functions(double z, double& e, double& p1, double& p2) {
  e = std::exp(z);
  if (std::abs(z) < 0.5) {
    // phi_k = sum_n z^n / (n+k)!
    double term1 = 1.0, term2 = 0.5;
    p1 = 0.0;
    p2 = 0.0;
    for (int n = 0; n < 24; ++n) {
      p1 += term1;
      p2 += term2;
      term1 *= z / (n + 2);
      term2 *= z / (n + 3);
    }
  } else {
    p1 = std::expm1(z) / z;
    p2 = (std::expm1(z) - z) / (z * z);
  }
}

}  // namespace

Solver::Solver(SolverConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  const Grid g = cfg_.grid();
  linear_ = abs_k_power(g, cfg_.alpha);
  for (double& v : linear_) v *= -cfg_.nu;
}

void Solver::reset() {
  have_prev_ = false;
  prev_u_.clear();
  prev_n_.clear();
}

void Solver::nonlinear_hat(const cvec& u, cvec& out) const {
  const Grid g = cfg_.grid();
  const std::size_t n = g.size();
  out.assign(u.size(), 0.0);
  if (!cfg_.nonlinear) return;
  thread_local Scratch s;
  s.x.resize(n);
  s.y.resize(n);
  s.z.resize(n);
  const auto& k = simd::kernels();
  if (cfg_.transport_form()) {
    // -theta_x H theta
    ddx(u, s.a, g);
    fft::inverse(s.a.data(), s.x.data(), n);
    hilbert(u, s.b);
    fft::inverse(s.b.data(), s.y.data(), n);
    k.multiply(s.z.data(), s.x.data(), s.y.data(), n);
    fft::forward(s.z.data(), out.data(), n);
    for (auto& c : out) c = -c;
  } else {
    // -a v w_x + w H w, with v-hat = w-hat / |k|
    ddx(u, s.a, g);
    fft::inverse(s.a.data(), s.x.data(), n);
    s.b.resize(u.size());
    s.b[0] = 0.0;
    for (std::size_t j = 1; j < u.size(); ++j) s.b[j] = u[j] / g.wavenumber(j);
    fft::inverse(s.b.data(), s.y.data(), n);
    k.multiply(s.z.data(), s.x.data(), s.y.data(), n);
    for (double& v : s.z) v *= -cfg_.a_param;
    fft::inverse(u.data(), s.x.data(), n);
    hilbert(u, s.a);
    fft::inverse(s.a.data(), s.y.data(), n);
    for (std::size_t i = 0; i < n; ++i) s.z[i] += s.x[i] * s.y[i];
    fft::forward(s.z.data(), out.data(), n);
  }
  if (cfg_.dealias) truncate(out, dealias_cutoff(g));
}

Field Solver::rhs(const Field& theta) const {
  if (!(theta.grid == cfg_.grid())) throw ParameterError("field grid does not match the solver grid");
  const SpectralField U = forward_transform(theta);
  SpectralField R(theta.grid);
  nonlinear_hat(U.coeffs, R.coeffs);
  for (std::size_t j = 0; j < R.size(); ++j) R[j] += linear_[j] * U[j];
  return inverse_transform(R);
}

Field rhs_eval(const Field& theta, const SolverConfig& cfg) { return Solver(cfg).rhs(theta); }

void Solver::prepare_etd(double dt) {
  if (dt == cached_dt_) return;
  const std::size_t m = linear_.size();
  cached_ez_.resize(m);
  cached_phi1_.resize(m);
  cached_phi2_.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    double e, p1, p2;
    phi_functions(dt * linear_[j], e, p1, p2);
    cached_ez_[j] = e;
    cached_phi1_[j] = dt * p1;
    cached_phi2_[j] = dt * p2;
  }
  cached_dt_ = dt;
}

double Solver::cfl_dt(const Field& theta) const {
  double speed;
  if (cfg_.transport_form()) {
    speed = hilbert_transform(theta).max_abs();
  } else {
    speed = std::abs(cfg_.a_param) * velocity_potential(theta).max_abs();
  }
  const double dt = cfg_.cfl_safety * theta.grid.dx() / std::max(1.0, speed);
  return std::min(dt, cfg_.dt);
}

TrajectoryState Solver::step(const TrajectoryState& s, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("step size must be positive");
  const Grid g = cfg_.grid();
  if (!(s.theta.grid == g)) throw ParameterError("state grid does not match the solver grid");
  TrajectoryState next = s;
  if (!s.theta.finite()) {
    next.status = Status::poisoned;
    next.reason = "non-finite state";
    return next;
  }
  const std::size_t m = g.modes();
  const auto& k = simd::kernels();
  cvec u(m), nu(m), out(m);
  fft::forward(s.theta.values.data(), u.data(), g.size());
  nonlinear_hat(u, nu);

  if (cfg_.scheme == Scheme::etd2) {
    prepare_etd(dt);
    cvec a(m), na(m);
    k.combine_complex(a.data(), u.data(), cached_ez_.data(), nu.data(), cached_phi1_.data(), m);
    nonlinear_hat(a, na);
    for (std::size_t j = 0; j < m; ++j) na[j] -= nu[j];
    const std::vector<double> ones(m, 1.0);
    k.combine_complex(out.data(), a.data(), ones.data(), na.data(), cached_phi2_.data(), m);
  } else {
    if (!have_prev_) {
      for (std::size_t j = 0; j < m; ++j) out[j] = (u[j] + dt * nu[j]) / (1.0 - dt * linear_[j]);
    } else {
      const double w = dt / prev_dt_;
      const double c0 = (1.0 + 2.0 * w) / (1.0 + w);
      const double c1 = 1.0 + w;
      const double c2 = w * w / (1.0 + w);
      for (std::size_t j = 0; j < m; ++j) {
        const auto rhs = c1 * u[j] - c2 * prev_u_[j] + dt * (c1 * nu[j] - w * prev_n_[j]);
        out[j] = rhs / (c0 - dt * linear_[j]);
      }
    }
    prev_u_ = u;
    prev_n_ = nu;
    prev_dt_ = dt;
    have_prev_ = true;
  }
  fft::inverse(out.data(), next.theta.values.data(), g.size());
  next.time = s.time + dt;
  next.step = s.step + 1;
  if (!next.theta.finite()) {
    next.status = Status::poisoned;
    next.reason = "non-finite value after step " + std::to_string(next.step);
  }
  return next;
}

double tail_energy_fraction(const Field& theta) {
  const SpectralField F = forward_transform(theta);
  const std::size_t last = F.size() - 1;
  double total = 0.0, tail = 0.0;
  for (std::size_t j = 1; j <= last; ++j) {
    const double e = std::norm(F[j]);
    total += e;
    if (2 * j > last) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

std::optional<std::string> blowup_monitor(const TrajectoryState& state, const SolverConfig& cfg,
                                          double last_dt) {
  const double grad = derivative(state.theta).max_abs();
  if (grad > cfg.blowup.grad_threshold) {
    return "gradient " + std::to_string(grad) + " exceeds threshold";
  }
  const double tail = tail_energy_fraction(state.theta);
  if (tail > cfg.blowup.tail_fraction) {
    return "top-octave energy fraction " + std::to_string(tail) + " exceeds threshold";
  }
  if (last_dt < cfg.blowup.dt_min) return "time step collapsed below dt_min";
  return std::nullopt;
}

RunSummary run(const SolverConfig& cfg, const Field& theta0, const ProbeObserver& observer) {
  cfg.validate();
  if (!(theta0.grid == cfg.grid())) throw ParameterError("initial data grid does not match config");
  theta0.require_finite("initial data");

  std::vector<double> probes = cfg.probes;
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

  Solver solver(cfg);
  RunSummary out{TrajectoryState{0.0, theta0, 0, Status::running, {}}, 0, 0.0};
  TrajectoryState& s = out.final_state;
  std::size_t next_probe = 0;
  auto emit = [&] {
    while (next_probe < probes.size() && probes[next_probe] <= s.time) {
      if (observer) observer(s);
      ++next_probe;
    }
  };
  out.max_grad = derivative(theta0).max_abs();
  emit();

  const double eps = 1e-12 * std::max(1.0, cfg.t_final);
  while (s.time < cfg.t_final - eps) {
    double dt = cfg.dt_policy == DtPolicy::cfl ? solver.cfl_dt(s.theta) : cfg.dt;
    if (cfg.dt_policy == DtPolicy::cfl && dt < cfg.blowup.dt_min) {
      s.status = Status::blowup_suspected;
      s.reason = "time step collapsed below dt_min";
      return out;
    }
    double target = cfg.t_final;
    if (next_probe < probes.size()) target = std::min(target, probes[next_probe]);
    bool land = false;
    if (s.time + dt * (1.0 + 1e-9) >= target) {
      dt = target - s.time;
      land = true;
    }
    TrajectoryState nxt = solver.step(s, dt);
    if (land) nxt.time = target;
    s = std::move(nxt);
    ++out.steps;
    if (s.status == Status::poisoned) return out;
    out.max_grad = std::max(out.max_grad, derivative(s.theta).max_abs());
    if (auto why = blowup_monitor(s, cfg, cfg.dt_policy == DtPolicy::cfl ? dt : cfg.dt)) {
      s.status = Status::blowup_suspected;
      s.reason = *why;
      if (observer) observer(s);
      return out;
    }
    emit();
  }
  s.time = std::max(s.time, cfg.t_final);
  s.status = Status::completed;
  emit();
  return out;
}

// ---------------------------------------------------------------------------

InitialKind initial_kind_from_string(const std::string& s) {
  if (s == "gaussian") return InitialKind::gaussian;
  if (s == "odd_gaussian_derivative") return InitialKind::odd_gaussian_derivative;
  if (s == "cosine_bump") return InitialKind::cosine_bump;
  if (s == "from_file") return InitialKind::from_file;
  throw ParameterError("unknown initial data kind: " + s);
}

std::string to_string(InitialKind k) {
  switch (k) {
    case InitialKind::gaussian:
      return "gaussian";
    case InitialKind::odd_gaussian_derivative:
      return "odd_gaussian_derivative";
    case InitialKind::cosine_bump:
      return "cosine_bump";
    case InitialKind::from_file:
      return "from_file";
  }
  return "unknown";
}

double truncation_profile(double t) { return 1.0 - smoothstep5(std::abs(t) - 1.0); }

Field initial_data(const InitialDataSpec& spec, const Grid& g) {
  if (spec.kind != InitialKind::from_file && !(spec.width > 0.0)) {
    throw ParameterError("initial data width must be positive");
  }
  const double A = spec.amplitude, w = spec.width, c = spec.center, b = spec.offset;
  Field f(g);
  switch (spec.kind) {
    case InitialKind::gaussian:
      f = Field::sample(g, [=](double x) {
        const double u = (x - c) / w;
        return b + A * std::exp(-u * u);
      });
      break;
    case InitialKind::odd_gaussian_derivative:
      // Scaled so that the extreme values are +-A.
      f = Field::sample(g, [=](double x) {
        const double u = (x - c) / w;
        return b + A * std::sqrt(2.0 * std::numbers::e) * u * std::exp(-u * u);
      });
      break;
    case InitialKind::cosine_bump:
      // b + A cos^2(pi (x-c) / (2w)) on |x-c| <= w, b outside. C^1 in general;
      // with w = L/2 it is the analytic periodic profile b + A (1 + cos(k_1 x))/2.
      f = Field::sample(g, [=](double x) {
        const double u = (x - c) / w;
        if (std::abs(u) >= 1.0) return b;
        const double cs = std::cos(0.5 * std::numbers::pi * u);
        return b + A * cs * cs;
      });
      break;
    case InitialKind::from_file: {
      const std::filesystem::path p(spec.path);
      Field loaded = p.extension() == ".csv" ? io::read_field_csv(p, g.length())
                                             : io::read_field_binary(p);
      if (!(loaded.grid == g)) throw ParameterError("field file grid does not match config grid");
      f = std::move(loaded);
      break;
    }
  }
  if (spec.truncation_radius) {
    const double R = *spec.truncation_radius;
    if (!(R > 0.0)) throw ParameterError("truncation radius must be positive");
    if (!(2.0 * R < 0.45 * g.length())) {
      throw DomainError("truncation support 2R must stay below 0.45 L");
    }
    for (std::size_t i = 0; i < g.size(); ++i) f[i] *= truncation_profile(g.node(i) / R);
  }
  f.require_finite("initial data");
  if (spec.require_positive && !(f.min() > 0.0)) {
    throw ParameterError("initial data must be strictly positive");
  }
  return f;
}

}  // namespace nlt
