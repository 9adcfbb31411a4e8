#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlt/commutators.hpp"
#include "nlt/error.hpp"
#include "nlt/pv_quadrature.hpp"
#include "nlt/spectral_ops.hpp"
#include "support.hpp"

using namespace nlt;
using nlt::testing::max_diff;

namespace {

Field gaussian(const Grid& g, double c = 0.0, double sigma = 1.0) {
  return Field::sample(g, [=](double x) { return std::exp(-0.5 * (x - c) * (x - c) / (sigma * sigma)); });
}

}  // namespace

TEST_CASE("hypothesis and kernel integrability predicates") {
  CHECK(commutator_hypothesis_holds(0.6, 0.25));
  CHECK(!commutator_hypothesis_holds(0.6, 0.3));
  CHECK(!commutator_hypothesis_holds(0.6, 0.5));
  CHECK(commutator_hypothesis_holds(1.5, 0.9));
  CHECK(!commutator_hypothesis_holds(1.5, 1.0));
  CHECK(!commutator_hypothesis_holds(2.0, 0.5));

  // In one dimension the far branch |z|^{-(1-lambda+alpha/2)} needs lambda < alpha/2
  // whatever alpha is.
  for (double a = 0.05; a < 2.0; a += 0.05) {
    for (double l = 0.05; l < 1.0; l += 0.05) {
      CHECK(commutator_kernel_integrable(a, l) == (l < 0.5 * a));
      if (a < 1.0 && commutator_hypothesis_holds(a, l)) CHECK(commutator_kernel_integrable(a, l));
    }
  }
  CHECK(!commutator_kernel_integrable(1.5, 0.9));

  CHECK_THROWS_AS(require_commutator_hypothesis(Weight(0.3, 2), 0.6), ParameterError);
  CHECK_THROWS_AS(require_commutator_hypothesis(Weight(0.5, 2), 1.0), ParameterError);
  CHECK_NOTHROW(require_commutator_hypothesis(Weight(0.9, 4), 1.5));
  CHECK_NOTHROW(require_commutator_hypothesis(Weight::unit(), 0.3));
}

TEST_CASE("commutator application") {
  const Grid g(2048, 80.0);
  const Weight w(0.5, 2);
  SUBCASE("identity weight commutes") {
    CHECK(commutator_apply(gaussian(g), Weight::unit(), 1.2).max_abs() == 0.0);
  }
  SUBCASE("constant input gives c Lambda^{alpha/2} w") {
    const Field c = Field::constant(g, 2.0);
    const Field lhs = commutator_apply(c, w, 1.4, false);
    const Field rhs = 2.0 * fractional_power(w.sample(g), 0.7);
    CHECK(max_diff(lhs, rhs) < 1e-10);
    CHECK_THROWS_AS(commutator_apply(c, w, 1.4), DomainError);
  }
  SUBCASE("linearity") {
    const Field f = gaussian(g, 3.0, 1.5), h = gaussian(g, -10.0, 0.7);
    const Field lhs = commutator_apply(2.0 * f + (-3.0) * h, w, 0.8);
    const Field rhs = 2.0 * commutator_apply(f, w, 0.8) + (-3.0) * commutator_apply(h, w, 0.8);
    CHECK(max_diff(lhs, rhs) < 1e-10);
  }
  SUBCASE("singular-integral oracle") {
    const Field f = Field::sample(g, [](double x) { return std::exp(-x * x); });
    const Field a = commutator_apply(f, w, 1.0);
    const Field b = commutator_kernel_pv(w.sample(g), f, 0.5);
    CHECK(max_diff(a, b) / a.max_abs() < 1e-3);
  }
  SUBCASE("alpha range") {
    CHECK_THROWS_AS(commutator_apply(gaussian(g), w, 0.0), ParameterError);
    CHECK_THROWS_AS(commutator_apply(gaussian(g), w, 2.0), ParameterError);
  }
}

TEST_CASE("operator norm estimate") {
  CommutatorTrialPlan plan;
  plan.random_trials = 24;
  SUBCASE("trial functions are resolution independent and decaying") {
    const auto a = commutator_trials(Grid(512, 100.0), plan);
    const auto b = commutator_trials(Grid(1024, 100.0), plan);
    REQUIRE(a.size() == b.size());
    for (std::size_t t = 0; t < a.size(); ++t) {
      CHECK(a[t].label == b[t].label);
      for (std::size_t i = 0; i < a[t].f.size(); ++i) CHECK(a[t].f[i] == b[t].f[2 * i]);
      CHECK_NOTHROW(require_boundary_decay(b[t].f, 0.45, 1e-8));
    }
  }
  SUBCASE("unit weight") {
    const auto r = commutator_norm_estimate(Weight::unit(), 1.0, Grid(512, 100.0), plan);
    CHECK(r.sup_estimate < 1e-10);
  }
  SUBCASE("refinement stability") {
    const auto r = commutator_norm_refinement(Weight(0.25, 2), 0.6, 100.0, {1024, 2048}, plan);
    REQUIRE(r.refinement_trace.size() == 2);
    const double a = r.refinement_trace[0].second, b = r.refinement_trace[1].second;
    CHECK(std::isfinite(b));
    CHECK(b > 0.0);
    CHECK(std::abs(b - a) / a < 0.2);
    for (double q : r.rayleigh_quotients) CHECK(q >= 0.0);
    CHECK(r.sup_estimate == doctest::Approx(*std::max_element(r.rayleigh_quotients.begin(),
                                                               r.rayleigh_quotients.end())));
  }
  SUBCASE("hypothesis enforced") {
    CHECK_THROWS_AS(commutator_norm_estimate(Weight(0.3, 2), 0.6, Grid(512, 100.0), plan),
                    ParameterError);
  }
  SUBCASE("pointwise kernel bound has a finite constant") {
    const Grid g(1024, 100.0);
    const double c = commutator_kernel_bound_constant(gaussian(g, 5.0, 2.0), Weight(0.5, 2), 1.5);
    CHECK(std::isfinite(c));
    CHECK(c > 0.0);
  }
}

TEST_CASE("Lambda^alpha of the weight") {
  const Weight w(0.5, 2);
  SUBCASE("value at the origin is the ratio there") {
    const auto r = verify_lambda_alpha_weight_bound(w, 1.0, {100.0}, 64);
    CHECK(r.converged);
    CHECK(r.value_at_zero == doctest::Approx(weight_fractional_laplacian(w, 1.0, 0.0)));
    CHECK(r.sup_ratio >= std::abs(r.value_at_zero));
    CHECK(std::isfinite(r.sup_ratio));
  }
  SUBCASE("alpha close to 2 approaches -w''") {
    CHECK(weight_fractional_laplacian(w, 1.999, 0.0) == doctest::Approx(-w.deriv(0.0, 2)).epsilon(5e-3));
    CHECK(weight_fractional_laplacian(w, 1.999, 2.0) == doctest::Approx(-w.deriv(2.0, 2)).epsilon(5e-3));
  }
  SUBCASE("ratio shrinks with lambda") {
    double prev = 0.0;
    for (double l : {0.05, 0.1, 0.2, 0.35, 0.5, 0.7, 0.9}) {
      const auto r = verify_lambda_alpha_weight_bound(Weight(l, 2), 1.0, {100.0}, 64);
      CHECK(r.sup_ratio > prev);
      prev = r.sup_ratio;
    }
  }
}
