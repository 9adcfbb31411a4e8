#pragma once
// Time integration of
//   theta_t + theta_x H theta + nu Lambda^alpha theta = 0          (a = -1)
//   w_t + a v w_x - w H w + nu Lambda^alpha w = 0, v_x = H w      (other a)
// on the periodic grid. The a = -1 member of the second family is the
// x-derivative of the first (w = -theta_x), so a = -1 integrates the
// transport form directly.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nlt/field.hpp"

namespace nlt {

enum class Scheme { etd2, imex_bdf2 };
enum class DtPolicy { fixed, cfl };
enum class Status { running, completed, blowup_suspected, poisoned };

std::string to_string(Scheme s);
std::string to_string(DtPolicy p);
std::string to_string(Status s);
Scheme scheme_from_string(const std::string& s);
DtPolicy dt_policy_from_string(const std::string& s);

struct BlowupThresholds {
  /// Trip when ||theta_x||_inf exceeds this.
  double grad_threshold = 1e3;
  /// Trip when the top octave carries more than this fraction of the
  /// fluctuation energy (all modes but the mean).
  double tail_fraction = 1e-6;
  /// Trip when the adaptive step falls below this.
  double dt_min = 1e-9;
};

struct SolverConfig {
  double alpha = 1.5;
  double nu = 1.0;
  double a_param = -1.0;
  std::size_t n_points = 1024;
  double length = 40.0;
  Scheme scheme = Scheme::etd2;
  DtPolicy dt_policy = DtPolicy::cfl;
  /// Fixed step, or the upper bound of the adaptive step.
  double dt = 1e-2;
  double cfl_safety = 0.5;
  double t_final = 1.0;
  std::vector<double> probes;
  BlowupThresholds blowup;
  bool dealias = true;
  /// Off: pure fractional heat flow.
  bool nonlinear = true;

  /// Throws ParameterError on any violated invariant.
  void validate() const;
  Grid grid() const { return Grid(n_points, length); }
  bool transport_form() const { return a_param == -1.0; }
};

/// n + 1 equally spaced times from 0 to t_final.
std::vector<double> uniform_probes(double t_final, std::size_t intervals);

struct TrajectoryState {
  double time = 0.0;
  Field theta;
  std::size_t step = 0;
  Status status = Status::running;
  std::string reason;
};

/// Nonlinear part plus -nu Lambda^alpha theta.
Field rhs_eval(const Field& theta, const SolverConfig& cfg);

/// Trip reason, or nullopt when the state looks healthy.
std::optional<std::string> blowup_monitor(const TrajectoryState& state, const SolverConfig& cfg,
                                          double last_dt);

/// Fraction of fluctuation energy in the top octave k in (k_nyq/2, k_nyq].
double tail_energy_fraction(const Field& theta);

class Solver {
 public:
  explicit Solver(SolverConfig cfg);

  const SolverConfig& config() const { return cfg_; }

  /// Nonlinear part plus -nu Lambda^alpha theta.
  Field rhs(const Field& theta) const;

  /// dt = safety * dx / max(1, ||H theta||_inf), capped by cfg.dt.
  double cfl_dt(const Field& theta) const;

  /// Advance one step of size dt. Status becomes poisoned on NaN. BDF2 keeps
  /// the previous step as history, so successive calls must chain.
  TrajectoryState step(const TrajectoryState& s, double dt);

  /// Forget multistep history (BDF2 restarts with one IMEX Euler step).
  void reset();

 private:
  SolverConfig cfg_;
  std::vector<double> linear_;  // -nu |k|^alpha
  std::vector<double> cached_ez_, cached_phi1_, cached_phi2_;
  double cached_dt_ = -1.0;
  // BDF2 history
  std::vector<std::complex<double>> prev_u_, prev_n_;
  double prev_dt_ = 0.0;
  bool have_prev_ = false;

  void nonlinear_hat(const std::vector<std::complex<double>>& u,
                     std::vector<std::complex<double>>& out) const;
  void prepare_etd(double dt);
};

/// Called at every probe time with the state at that time.
using ProbeObserver = std::function<void(const TrajectoryState&)>;

struct RunSummary {
  TrajectoryState final_state;
  std::size_t steps = 0;
  double max_grad = 0.0;
};

/// Integrate from theta0 to t_final (or until the monitor trips), landing
/// exactly on each probe time. Deterministic for a given (cfg, theta0).
RunSummary run(const SolverConfig& cfg, const Field& theta0, const ProbeObserver& observer = {});

// ---------------------------------------------------------------------------

enum class InitialKind { gaussian, odd_gaussian_derivative, cosine_bump, from_file };

InitialKind initial_kind_from_string(const std::string& s);
std::string to_string(InitialKind k);

struct InitialDataSpec {
  InitialKind kind = InitialKind::gaussian;
  double amplitude = 1.0;
  /// Gaussian width w in exp(-((x-c)/w)^2), or the cosine bump half-width.
  double width = 1.0;
  double center = 0.0;
  double offset = 0.0;
  std::string path;  ///< binary dump or x,value CSV for from_file
  std::optional<double> truncation_radius;
  bool require_positive = false;
};

/// psi(t) = 1 on |t| <= 1, 0 on |t| >= 2, quintic smoothstep in between.
double truncation_profile(double t);

/// Samples the requested data and multiplies by psi(x/R) when R is given.
/// Throws DomainError if 2R >= 0.45 L and ParameterError if positivity is
/// required but min <= 0.
Field initial_data(const InitialDataSpec& spec, const Grid& g);

}  // namespace nlt
