#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlt/error.hpp"
#include "nlt/weights.hpp"

using namespace nlt;

TEST_CASE("weight construction rules") {
  CHECK_THROWS_AS(Weight(0.0, 2), ParameterError);
  CHECK_THROWS_AS(Weight(1.0, 2), ParameterError);
  CHECK_THROWS_AS(Weight(0.5, 3), ParameterError);
  CHECK_THROWS_AS(Weight(0.5, 0), ParameterError);
  CHECK_NOTHROW(Weight(0.9, 4));
  CHECK_THROWS_AS(Weight::supercritical(0.3, 2, 0.6), ParameterError);  // boundary excluded
  CHECK_THROWS_AS(Weight::supercritical(0.1, 2, 1.5), ParameterError);
  const Weight s = Weight::supercritical(0.25, 2, 0.6);
  CHECK(s.regime() == Regime::supercritical);
  CHECK(*s.alpha() == 0.6);
  CHECK(Weight::for_dissipation(0.9, 2, 1.5).regime() == Regime::subcritical);
  CHECK_THROWS_AS(Weight::for_dissipation(0.4, 2, 0.6), ParameterError);
}

TEST_CASE("closed form values") {
  const Weight w(0.5, 2);
  CHECK(w(0.0) == 1.0);
  CHECK(w(1.0) == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-15));
  CHECK(w(-3.0) == w(3.0));
  CHECK(w.deriv(0.0, 1) == 0.0);
  CHECK(w.deriv(1.0, 1) == doctest::Approx(-0.5 * 0.5 * std::pow(2.0, -0.25)).epsilon(1e-14));
  CHECK(w.deriv(1.0, 1) == doctest::Approx(-0.210224).epsilon(1e-6));
  CHECK_THROWS_AS(w.deriv(1.0, 3), ParameterError);
  CHECK(std::exp(w.log_value(7.0)) == doctest::Approx(w(7.0)).epsilon(1e-14));
}

TEST_CASE("derivatives agree with finite differences") {
  const double h = 1e-5;
  for (const Weight& w : {Weight(0.5, 2), Weight(0.9, 4), Weight(0.25, 6)}) {
    for (double x : {-7.3, -1.0, -0.2, 0.0, 0.4, 1.7, 25.0}) {
      const double fd1 = (w(x + h) - w(x - h)) / (2 * h);
      const double fd2 = (w(x + h) - 2 * w(x) + w(x - h)) / (h * h);
      CHECK(w.deriv(x, 1) == doctest::Approx(fd1).epsilon(1e-8));
      CHECK(std::abs(w.deriv(x, 2) - fd2) < 1e-4);
    }
  }
}

TEST_CASE("pointwise properties on random points") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-500.0, 500.0);
  for (const Weight& w : {Weight(0.5, 2), Weight(0.9, 4), Weight(0.1, 2)}) {
    double c2 = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const double x = u(rng);
      const double v = w(x);
      CHECK(v > 0.0);
      CHECK(v <= 1.0);
      CHECK(v == w(-x));
      CHECK(std::abs(w.deriv(x, 1)) < v);
      c2 = std::max(c2, std::abs(w.deriv(x, 2)) / v);
    }
    // |w''| <= C w with C <= lambda * (kappa - 1) + margin
    CHECK(c2 <= w.lambda() * (w.kappa() - 1) + 1e-12);
  }
  const Weight one = Weight::unit();
  CHECK(one(123.0) == 1.0);
  CHECK(one.deriv(5.0, 2) == 0.0);
}

TEST_CASE("two-point inequality") {
  const Weight w(0.5, 2);
  CHECK(weight_inequality_ratio(w, 3.0, 3.0) == 0.0);
  CHECK(!classify_pair(1.0, 1.0));
  CHECK(classify_pair(0.0, 0.5) == PairStratum::near);
  CHECK(classify_pair(10.0, 12.0) == PairStratum::comparable);
  CHECK(classify_pair(-10.0, 12.0) == PairStratum::far);

  PairSamplingPlan plan;
  plan.pairs = 30000;
  const auto r = check_pointwise_weight_inequality(w, plan);
  CHECK(std::isfinite(r.fitted_constant));
  CHECK(r.fitted_constant > 0.0);
  CHECK(r.violations_fit == 0);
  CHECK(r.violations_holdout == 0);
  for (double s : r.stratum_sup) CHECK(s > 0.0);
}

TEST_CASE("A_p estimator") {
  const Grid g(1024, 200.0);
  SUBCASE("unit weight gives exactly one") {
    const auto r = estimate_ap_constant(Weight::unit().sample(g), 2.0);
    CHECK(r.constant == 1.0);
    CHECK(estimate_ap_constant(Weight::unit().sample(g), 3.7).constant == 1.0);
  }
  SUBCASE("power weight") {
    const Field w = Weight(0.5, 2).sample(g);
    const auto r = estimate_ap_constant(w, 2.0);
    CHECK(r.constant >= 1.0);
    CHECK(std::isfinite(r.constant));
    for (std::size_t i = 1; i < r.refinement_trace.size(); ++i) {
      CHECK(r.refinement_trace[i].second >= r.refinement_trace[i - 1].second);
    }
    // Hölder: every interval product is at least one.
    for (std::size_t c = 8; c + 8 < g.size(); c += 37) CHECK(ap_product(w, 2.0, c, 8) >= 1.0 - 1e-14);

    ApFamily tiny;
    tiny.single_center = 0.0;
    tiny.max_level = 0;
    const auto t = estimate_ap_constant(w, 2.0, tiny);
    CHECK(t.interval_family_size == 1);
    CHECK(t.constant == doctest::Approx(1.0).epsilon(1e-3));
  }
  SUBCASE("bad input") {
    CHECK_THROWS_AS(estimate_ap_constant(Weight::unit().sample(g), 1.0), ParameterError);
    ApFamily none;
    none.max_length = 1e-6;
    CHECK_THROWS_AS(estimate_ap_constant(Weight::unit().sample(g), 2.0, none), ParameterError);
    CHECK_THROWS_AS(ap_product(Weight::unit().sample(g), 2.0, 2, 4), RangeError);
  }
}
