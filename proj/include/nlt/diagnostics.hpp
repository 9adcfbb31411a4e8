#pragma once
// Energy functionals and inequality monitors evaluated on solver output.
//
// Weighted norms: ||f||_w^2 = int w f^2 dx, ||f||_{H^s_w}^2 = ||f||_w^2 +
// ||Lambda^s f||_w^2 (multiplier route), all by the periodic rectangle rule.

#include <optional>
#include <string>
#include <vector>

#include "nlt/solver.hpp"
#include "nlt/weights.hpp"

namespace nlt {

/// k = max(0, 3/2 - alpha).
double energy_sobolev_index(double alpha);

struct EnergyRecord {
  double time = 0.0;
  double l2w = 0.0;            ///< ||theta||_w^2
  double hkw = 0.0;            ///< ||theta||_{H^k_w}^2, k = energy_sobolev_index(alpha)
  double k = 0.0;
  double dissipation = 0.0;    ///< ||Lambda^{alpha/2} theta||_w^2
  double dissipation_k = 0.0;  ///< ||Lambda^{k+alpha/2} theta||_w^2
  double h2w = 0.0;            ///< ||theta||_{H^2_w}^2
  double dissipation_2 = 0.0;  ///< ||Lambda^{2+alpha/2} theta||_w^2
  double sup_norm = 0.0;
  double grad_sup = 0.0;
  bool poisoned = false;
};

/// Poisoned input yields a record with poisoned = true and NaN entries.
EnergyRecord energy_record(const Field& theta, const Weight& w, const SolverConfig& cfg,
                           double time = 0.0);

/// Records for many snapshots, computed in parallel; order is preserved.
std::vector<EnergyRecord> energy_series(const std::vector<TrajectoryState>& snapshots,
                                        const Weight& w, const SolverConfig& cfg);

/// CSV with header t,l2w,hkw,dissipation,sup,grad_sup.
void write_energy_csv(const std::vector<EnergyRecord>& series, const std::string& path);

struct RunRecord {
  RunSummary summary;
  std::vector<EnergyRecord> series;
  std::vector<TrajectoryState> snapshots;  ///< filled when requested
};

/// solver::run with an energy record at every probe time.
RunRecord run_with_diagnostics(const SolverConfig& cfg, const Field& theta0, const Weight& w,
                               bool keep_snapshots = false);

// ---------------------------------------------------------------------------

struct CordobaReport {
  double max_defect = 0.0;  ///< max_x (Lambda^a theta^3 - 3 theta^2 Lambda^a theta)
  double scale = 0.0;       ///< ||theta||_inf^3
  double argmax_x = 0.0;
  bool passed = false;      ///< max_defect <= tol * scale
};

/// Throws ParameterError unless min theta > 0.
CordobaReport check_cordoba_inequality(const Field& theta, double tol = 1e-6, double alpha = 1.0);

enum class EnergyNorm { l2, hk };

struct EnergyGrowthReport {
  bool fit_defined = false;
  double c_fit = 0.0;
  /// Worst interval (index of its left record).
  std::size_t argmax_interval = 0;
  /// E(t_n) <= E(0) exp(c_fit t_n) (1 + 1e-9) for every record.
  bool integral_form_holds = false;
  double worst_integral_ratio = 0.0;  ///< max_n E(t_n) / (E(0) exp(c_fit t_n))
  /// 2 nu int D <= 1.05 (E(0) - E(T) + c_fit int E).
  bool integral_consistent = false;
  double dissipation_integral = 0.0;
  double budget = 0.0;
};

/// Discrete form of dE/dt + 2 nu D <= C E on consecutive records:
///   C_fit = max_n [ (E_{n+1} - E_n)/dt + nu (D_n + D_{n+1}) ] / ((E_n + E_{n+1})/2).
/// Fewer than 3 records or any E <= 0 leaves fit_defined false.
EnergyGrowthReport check_energy_growth(const std::vector<EnergyRecord>& series, double nu,
                                       EnergyNorm norm = EnergyNorm::l2);

struct MaximumPrincipleReport {
  double initial_sup = 0.0;
  double max_sup = 0.0;
  double worst_time = 0.0;
  bool passed = false;
};

/// sup_t ||theta(t)||_inf <= ||theta_0||_inf (1 + rel_tol).
MaximumPrincipleReport check_maximum_principle(const std::vector<EnergyRecord>& series,
                                               double rel_tol = 1e-6);

struct H2MonitorReport {
  bool fit_defined = false;
  /// Smallest c_p with r <= c_p y^p on every interval, p = 2, 4, 16/3, where
  /// r = dE2/dt + 2 nu D2, E2 = ||theta||_{H^2_w}^2 and y = sqrt(E2).
  double c2 = 0.0, c4 = 0.0, c16_3 = 0.0;
  double max_residual = 0.0;
  bool finite = false;
};

H2MonitorReport fit_h2_monitor(const std::vector<EnergyRecord>& series, double nu);

struct PointwiseSobolevReport {
  double s = 0.0;
  double fitted_constant = 0.0;  ///< max_x LHS / RHS over nodes with RHS > 0
  double argmax_x = 0.0;
  bool degenerate = false;       ///< some node has RHS = 0 but LHS > 0
  Field lhs, rhs;
};

/// LHS(x) = (int_{|x-y| <= 0.45 L} |theta(x)-theta(y)|^2 |x-y|^{-1-2s} dy)^{1/2}
/// RHS(x) = M(|theta - theta(x)|^2)(x)^{(1-s)/2} M(theta_x^2)(x)^{s/2}
PointwiseSobolevReport check_pointwise_sobolev_inequality(const Field& theta, double s);

}  // namespace nlt
