#pragma once
// The commutator T_w f = [Lambda^{alpha/2}, w] f, its empirical operator norm
// from L^2(w) to L^2(1/w), and the pointwise bound |Lambda^alpha w| <= C w.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nlt/field.hpp"
#include "nlt/weights.hpp"

namespace nlt {

/// Lambda^{alpha/2}(w f) - w Lambda^{alpha/2} f by the multiplier route.
/// Requires alpha in (0, 2) and, unless disabled, f decaying at the box edge.
Field commutator_apply(const Field& f, const Weight& w, double alpha, bool check_boundary = true);

/// Sufficient hypothesis under which continuity L^2(w) -> L^2(1/w) is claimed:
/// alpha in (0, 1) with 0 < lambda < alpha/2, or alpha in (1, 2) with 0 < lambda < 1.
bool commutator_hypothesis_holds(double alpha, double lambda);

/// Whether chi(z) = min(|z|^{-alpha/2}, |z|^{-(1 - lambda + alpha/2)}) is in L^1(R).
/// The near branch always is; the far branch needs lambda < alpha/2.
bool commutator_kernel_integrable(double alpha, double lambda);

/// Throws ParameterError when the weight/alpha pair violates the hypothesis.
/// alpha = 1 is held to the supercritical condition lambda < 1/2.
void require_commutator_hypothesis(const Weight& w, double alpha);

struct CommutatorTrialPlan {
  std::size_t random_trials = 100;
  bool adversarial = true;
  std::uint64_t seed = 7;
  /// Trial packets stay this many widths inside 0.45 L.
  double decay_widths = 7.0;
};

struct CommutatorTrial {
  std::string label;
  Field f;
};

/// Deterministic trial functions: random Gaussian packet sums plus
/// edge-translated bumps and oscillatory packets. Parameters depend only on
/// (plan, L), never on N, so different resolutions see the same functions.
std::vector<CommutatorTrial> commutator_trials(const Grid& g, const CommutatorTrialPlan& plan);

struct CommutatorReport {
  double alpha = 0.0;
  double lambda = 0.0;
  int kappa = 0;
  std::vector<double> rayleigh_quotients;
  std::vector<std::string> labels;
  double sup_estimate = 0.0;
  std::string argmax_label;
  /// (N, sup_estimate) per resolution.
  std::vector<std::pair<std::size_t, double>> refinement_trace;
};

/// ||T_w f||_{L^2(1/w)} / ||f||_{L^2(w)}.
double commutator_rayleigh_quotient(const Field& f, const Weight& w, double alpha);

/// One grid. Throws ParameterError when the hypothesis fails.
CommutatorReport commutator_norm_estimate(const Weight& w, double alpha, const Grid& g,
                                          const CommutatorTrialPlan& plan = {});

/// Same ensemble on each resolution; the returned report is the finest one
/// with the full trace.
CommutatorReport commutator_norm_refinement(const Weight& w, double alpha, double length,
                                            const std::vector<std::size_t>& resolutions,
                                            const CommutatorTrialPlan& plan = {});

/// max over sampled nodes of |T_w f|(x) / (sqrt(w(x)) (chi * sqrt(w)|f|)(x)).
double commutator_kernel_bound_constant(const Field& f, const Weight& w, double alpha,
                                        std::size_t stride = 16);

// ---------------------------------------------------------------------------

struct WeightLaplacianReport {
  double alpha = 0.0;
  double sup_ratio = 0.0;
  double argmax_x = 0.0;
  double value_at_zero = 0.0;  ///< Lambda^alpha w (0)
  double max_error_estimate = 0.0;
  bool converged = true;
  /// (L, sup_ratio) per window.
  std::vector<std::pair<double, double>> trace;
};

/// Lambda^alpha w(x) over the whole line: |z| <= 1 in second-difference form,
/// |z| > 1 in first-difference form, adaptive Gauss-Kronrod on each piece.
double weight_fractional_laplacian(const Weight& w, double alpha, double x,
                                   double* error_estimate = nullptr);

/// sup over the nodes of Grid(n, L) of |Lambda^alpha w| / w, one entry per L.
WeightLaplacianReport verify_lambda_alpha_weight_bound(const Weight& w, double alpha,
                                                       const std::vector<double>& lengths,
                                                       std::size_t n_points = 512);

}  // namespace nlt
