#include "nlt/weights.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "nlt/error.hpp"

namespace nlt {

Weight::Weight(double lambda, int kappa) : lambda_(lambda), kappa_(kappa) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw ParameterError("weight exponent lambda must lie in (0, 1), got " + std::to_string(lambda));
  }
  if (kappa < 2 || kappa % 2 != 0) {
    throw ParameterError("weight exponent kappa must be an even integer >= 2, got " +
                         std::to_string(kappa));
  }
}

Weight Weight::supercritical(double lambda, int kappa, double alpha) {
  Weight w(lambda, kappa);
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ParameterError("supercritical regime needs alpha in (0, 1], got " + std::to_string(alpha));
  }
  if (!(lambda < 0.5 * alpha)) {
    throw ParameterError("supercritical regime needs lambda < alpha/2 (lambda = " +
                         std::to_string(lambda) + ", alpha = " + std::to_string(alpha) + ")");
  }
  w.regime_ = Regime::supercritical;
  w.alpha_ = alpha;
  return w;
}

Weight Weight::for_dissipation(double lambda, int kappa, double alpha) {
  if (alpha > 1.0) return Weight(lambda, kappa);
  return supercritical(lambda, kappa, alpha);
}

Weight Weight::unit() {
  Weight w;
  w.unit_ = true;
  return w;
}

double Weight::log_value(double x) const {
  if (unit_) return 0.0;
  return -(lambda_ / kappa_) * std::log1p(std::pow(std::abs(x), kappa_));
}

double Weight::operator()(double x) const {
  if (unit_) return 1.0;
  return std::pow(1.0 + std::pow(std::abs(x), kappa_), -lambda_ / kappa_);
}

double Weight::deriv(double x, int order) const {
  if (order != 1 && order != 2) throw ParameterError("weight derivative order must be 1 or 2");
  if (unit_) return 0.0;
  const double k = kappa_;
  const double u = 1.0 + std::pow(x, kappa_);
  const double w = (*this)(x);
  if (order == 1) return -lambda_ * std::pow(x, kappa_ - 1) / u * w;
  const double x2k2 = std::pow(x, 2 * kappa_ - 2);
  return -lambda_ * w / u * ((k - 1.0) * std::pow(x, kappa_ - 2) - (k + lambda_) * x2k2 / u);
}

Field Weight::sample(const Grid& g) const {
  return Field::sample(g, [this](double x) { return (*this)(x); });
}

// ---------------------------------------------------------------------------

double weight_inequality_ratio(const Weight& w, double x, double y) {
  const double d = std::abs(x - y);
  if (d == 0.0) return 0.0;
  const double wx = w(x), wy = w(y);
  const double scale = d <= 1.0 ? d : std::pow(d, 0.5 * w.lambda());
  return std::abs(wx - wy) / (scale * std::sqrt(wx * wy));
}

std::optional<PairStratum> classify_pair(double x, double y) {
  const double d = std::abs(x - y);
  if (d == 0.0) return std::nullopt;
  if (d <= 1.0) return PairStratum::near;
  if (d <= 0.5 * std::abs(x) || d <= 0.5 * std::abs(y)) return PairStratum::comparable;
  return PairStratum::far;
}

namespace {

struct PairSampler {
  std::mt19937_64 rng;
  double X;
  std::uniform_real_distribution<double> unit{0.0, 1.0};

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(rng); }
  bool coin() { return unit(rng) < 0.5; }

  std::pair<double, double> draw(PairStratum s) {
    switch (s) {
      case PairStratum::near: {
        const double x = uniform(-X, X);
        const double d = 1.0 - unit(rng);  // (0, 1]
        double y = coin() ? x + d : x - d;
        if (std::abs(y) > X) y = 2.0 * x - y;
        return {x, y};
      }
      case PairStratum::comparable: {
        double x;
        do x = uniform(-X, X);
        while (std::abs(x) <= 2.0);
        const double d = uniform(1.0, 0.5 * std::abs(x));
        double y = coin() ? x + d : x - d;
        if (std::abs(y) > X) y = 2.0 * x - y;
        return {x, y};
      }
      case PairStratum::far:
        for (;;) {
          const double x = uniform(-X, X), y = uniform(-X, X);
          if (classify_pair(x, y) == PairStratum::far) return {x, y};
        }
    }
    return {0.0, 0.0};
  }
};

template <typename Visit>
void sample_pairs(const PairSamplingPlan& plan, std::uint64_t seed, Visit&& visit) {
  if (!(plan.half_width > 2.0)) throw ParameterError("pair sampling box must exceed [-2, 2]");
  PairSampler s{std::mt19937_64(seed), plan.half_width};
  for (std::size_t i = 0; i < plan.pairs; ++i) {
    const auto stratum = static_cast<PairStratum>(i % 3);
    const auto [x, y] = s.draw(stratum);
    visit(x, y);
  }
}

}  // namespace

WeightInequalityReport check_pointwise_weight_inequality(const Weight& w,
                                                         const PairSamplingPlan& plan) {
  if (plan.pairs < 3) throw ParameterError("need at least one pair per stratum");
  WeightInequalityReport r;
  r.pairs = plan.pairs;
  std::vector<double> ratios;
  ratios.reserve(plan.pairs);
  sample_pairs(plan, plan.seed, [&](double x, double y) {
    const double q = weight_inequality_ratio(w, x, y);
    ratios.push_back(q);
    const auto s = classify_pair(x, y);
    if (!s) return;
    double& ss = r.stratum_sup[static_cast<int>(*s)];
    ss = std::max(ss, q);
    if (q > r.fitted_constant) {
      r.fitted_constant = q;
      r.max_x = x;
      r.max_y = y;
      r.max_stratum = *s;
    }
  });
  const double bound = plan.validation_factor * r.fitted_constant;
  for (double q : ratios) r.violations_fit += q > bound;
  sample_pairs(plan, plan.seed + 1, [&](double x, double y) {
    const double q = weight_inequality_ratio(w, x, y);
    r.holdout_sup = std::max(r.holdout_sup, q);
    r.violations_holdout += q > bound;
  });
  return r;
}

// ---------------------------------------------------------------------------

namespace {

// Trapezoid average of exp(l_i - shift) over nodes [lo, hi] from a prefix sum.
long double trapezoid_average(const std::vector<long double>& prefix,
                              const std::vector<long double>& vals, std::size_t lo,
                              std::size_t hi) {
  const long double sum = prefix[hi + 1] - prefix[lo];
  return (sum - 0.5L * (vals[lo] + vals[hi])) / static_cast<long double>(hi - lo);
}

struct ApTables {
  double p;
  long double shift_a = 0.0L, shift_b = 0.0L;
  std::vector<long double> a, b, pa, pb;

  ApTables(const Field& w, double p_) : p(p_) {
    if (!(p > 1.0)) throw ParameterError("A_p needs p > 1");
    const std::size_t n = w.size();
    std::vector<long double> la(n), lb(n);
    shift_a = -std::numeric_limits<long double>::infinity();
    shift_b = shift_a;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(w[i] > 0.0) || !std::isfinite(w[i])) {
        throw ParameterError("A_p estimate needs strictly positive finite weight samples");
      }
      la[i] = std::log(static_cast<long double>(w[i]));
      lb[i] = -la[i] / (p - 1.0);
      shift_a = std::max(shift_a, la[i]);
      shift_b = std::max(shift_b, lb[i]);
    }
    a.resize(n);
    b.resize(n);
    pa.assign(n + 1, 0.0L);
    pb.assign(n + 1, 0.0L);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = std::exp(la[i] - shift_a);
      b[i] = std::exp(lb[i] - shift_b);
      pa[i + 1] = pa[i] + a[i];
      pb[i + 1] = pb[i] + b[i];
    }
  }

  double product(std::size_t center, std::size_t radius) const {
    const std::size_t lo = center - radius, hi = center + radius;
    const long double log_a = std::log(trapezoid_average(pa, a, lo, hi)) + shift_a;
    const long double log_b = std::log(trapezoid_average(pb, b, lo, hi)) + shift_b;
    return static_cast<double>(std::exp(log_a + (p - 1.0) * log_b));
  }
};

}  // namespace

double ap_product(const Field& w, double p, std::size_t center, std::size_t radius) {
  if (radius == 0 || center < radius || center + radius >= w.size()) {
    throw RangeError("A_p interval does not fit inside the grid");
  }
  return ApTables(w, p).product(center, radius);
}

ApReport estimate_ap_constant(const Field& w, double p, const ApFamily& family) {
  const ApTables t(w, p);
  const Grid& g = w.grid;
  const std::size_t n = g.size();
  const double max_len = family.max_length > 0.0 ? family.max_length : 0.5 * g.length();

  std::size_t c_lo = 0, c_hi = n - 1;
  if (family.single_center) {
    const double pos = (*family.single_center + 0.5 * g.length()) / g.dx();
    const auto c = static_cast<long long>(std::llround(pos));
    if (c < 0 || c >= static_cast<long long>(n)) throw RangeError("A_p center outside the grid");
    c_lo = c_hi = static_cast<std::size_t>(c);
  }

  ApReport r;
  r.p = p;
  r.constant = 0.0;
  for (int m = 0;; ++m) {
    if (family.max_level && m > *family.max_level) break;
    const std::size_t R = std::size_t{1} << m;
    if (2.0 * static_cast<double>(R) * g.dx() > max_len * (1.0 + 1e-12) || 2 * R >= n) break;
    for (std::size_t c = std::max(c_lo, R); c <= c_hi && c + R < n; ++c) {
      const double v = t.product(c, R);
      ++r.interval_family_size;
      if (v > r.constant) {
        r.constant = v;
        r.argmax_center = g.node(c);
        r.argmax_half_width = static_cast<double>(R) * g.dx();
      }
    }
    r.refinement_trace.emplace_back(static_cast<double>(R) * g.dx(), r.constant);
  }
  if (r.interval_family_size == 0) throw ParameterError("A_p interval family is empty");
  return r;
}

}  // namespace nlt
