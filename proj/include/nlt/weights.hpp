#pragma once
// Power weights w(x) = (1 + |x|^kappa)^(-lambda/kappa) and the checks built
// on them: the two-point comparison inequality and an empirical Muckenhoupt
// A_p constant.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nlt/field.hpp"

namespace nlt {

enum class Regime { subcritical, supercritical };

class Weight {
 public:
  /// Subcritical admissibility: 0 < lambda < 1, kappa even >= 2.
  Weight(double lambda, int kappa);

  /// Additionally requires alpha in (0, 1] and lambda < alpha / 2.
  static Weight supercritical(double lambda, int kappa, double alpha);

  /// Regime picked from alpha: alpha > 1 subcritical, otherwise supercritical.
  static Weight for_dissipation(double lambda, int kappa, double alpha);

  /// w == 1. Bypasses validation; only meaningful as a test baseline.
  static Weight unit();

  double lambda() const { return lambda_; }
  int kappa() const { return kappa_; }
  Regime regime() const { return regime_; }
  /// Dissipation exponent the weight was validated against (supercritical only).
  std::optional<double> alpha() const { return alpha_; }
  bool is_unit() const { return unit_; }

  double operator()(double x) const;
  double log_value(double x) const;
  /// First or second derivative; other orders throw ParameterError.
  double deriv(double x, int order) const;

  Field sample(const Grid& g) const;

 private:
  Weight() = default;
  double lambda_ = 0.0;
  int kappa_ = 2;
  Regime regime_ = Regime::subcritical;
  std::optional<double> alpha_;
  bool unit_ = false;
};

// ---------------------------------------------------------------------------
// |w(x) - w(y)| <= C min(|x-y|, |x-y|^{lambda/2}) sqrt(w(x) w(y))

enum class PairStratum { near, comparable, far };

struct PairSamplingPlan {
  std::size_t pairs = 1'000'000;  ///< split evenly over the three strata
  double half_width = 100.0;      ///< x, y drawn from [-half_width, half_width]
  std::uint64_t seed = 20240101;
  double validation_factor = 1.01;
};

struct WeightInequalityReport {
  double fitted_constant = 0.0;
  double max_x = 0.0, max_y = 0.0;
  PairStratum max_stratum = PairStratum::near;
  double stratum_sup[3] = {0.0, 0.0, 0.0};
  std::size_t pairs = 0;
  /// Violations of factor * fitted_constant on the fitting sample and on an
  /// independent sample drawn with seed + 1.
  std::size_t violations_fit = 0;
  std::size_t violations_holdout = 0;
  double holdout_sup = 0.0;
};

/// Ratio |w(x)-w(y)| / (min(d, d^{lambda/2}) sqrt(w(x) w(y))); 0 when x == y.
double weight_inequality_ratio(const Weight& w, double x, double y);

/// Stratum a pair belongs to, or nullopt when d <= 0.
std::optional<PairStratum> classify_pair(double x, double y);

WeightInequalityReport check_pointwise_weight_inequality(const Weight& w,
                                                         const PairSamplingPlan& plan = {});

// ---------------------------------------------------------------------------
// Muckenhoupt A_p constant over centered node intervals.

struct ApFamily {
  /// Largest interval length; 0 means L / 2.
  double max_length = 0.0;
  /// Restrict to intervals centered at the node nearest this point.
  std::optional<double> single_center;
  /// Largest dyadic level m (half-width 2^m h); nullopt means unbounded.
  std::optional<int> max_level;
};

struct ApReport {
  double p = 2.0;
  double constant = 1.0;
  std::size_t interval_family_size = 0;
  /// (interval half-width, running sup up to that level)
  std::vector<std::pair<double, double>> refinement_trace;
  double argmax_center = 0.0;
  double argmax_half_width = 0.0;
};

/// A_p product on nodes [i - R, i + R] with trapezoid averages.
double ap_product(const Field& w, double p, std::size_t center, std::size_t radius);

ApReport estimate_ap_constant(const Field& w, double p, const ApFamily& family = {});

}  // namespace nlt
