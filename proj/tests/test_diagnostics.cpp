#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "nlt/diagnostics.hpp"
#include "nlt/error.hpp"
#include "nlt/spectral_ops.hpp"
#include "support.hpp"

using namespace nlt;

namespace {

constexpr double kPi = std::numbers::pi;

SolverConfig subcritical(std::size_t n) {
  SolverConfig c;
  c.alpha = 1.5;
  c.nu = 1.0;
  c.n_points = n;
  c.length = 40.0;
  c.t_final = 2.0;
  c.probes = uniform_probes(2.0, 80);
  return c;
}

double rel_drift(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("energy record basics") {
  SolverConfig c;
  c.n_points = 512;
  const Grid g = c.grid();
  const EnergyRecord z = energy_record(Field(g), Weight(0.5, 2), c);
  for (double v : {z.l2w, z.hkw, z.dissipation, z.dissipation_k, z.h2w, z.dissipation_2, z.sup_norm, z.grad_sup}) {
    CHECK(v == 0.0);
  }

  // sin(x) bump, unit weight, against adaptive quadrature.
  auto f = [](double x) { return std::sin(x) * std::exp(-0.25 * x * x); };
  const Field theta = Field::sample(g, f);
  const EnergyRecord r = energy_record(theta, Weight::unit(), c, 0.5);
  const double exact = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double x) { return f(x) * f(x); }, -20.0, 20.0, 15, 1e-14);
  CHECK(std::abs(r.l2w - exact) < 1e-10);
  CHECK(r.time == 0.5);
  CHECK(r.sup_norm == theta.max_abs());

  Field bad = theta;
  bad[3] = std::nan("");
  CHECK(energy_record(bad, Weight::unit(), c).poisoned);
}

TEST_CASE("k = max(0, 3/2 - alpha) across the alpha matrix") {
  for (double alpha : {0.3, 0.6, 0.8, 1.0, 1.2, 1.5, 1.6, 1.7, 1.9}) {
    CHECK(energy_sobolev_index(alpha) == std::max(0.0, 1.5 - alpha));
    SolverConfig c;
    c.alpha = alpha;
    c.n_points = 256;
    const Field theta = Field::sample(c.grid(), [](double x) { return std::exp(-x * x); });
    const EnergyRecord r = energy_record(theta, Weight(0.5, 2), c);
    CHECK(r.k == energy_sobolev_index(alpha));
    if (alpha >= 1.5) CHECK(r.hkw == r.l2w);
    if (alpha < 1.5) CHECK(r.hkw > r.l2w);
  }
  CHECK(energy_sobolev_index(1.6) == 0.0);
}

TEST_CASE("parallel series equals sequential records and CSV layout") {
  SolverConfig c = subcritical(256);
  c.probes = uniform_probes(2.0, 8);
  const Field theta0 = Field::sample(c.grid(), [](double x) { return std::exp(-x * x); });
  const Weight w(0.5, 2);
  const RunRecord rr = run_with_diagnostics(c, theta0, w, true);
  REQUIRE(rr.snapshots.size() == rr.series.size());
  const auto par = energy_series(rr.snapshots, w, c);
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].l2w == rr.series[i].l2w);
    CHECK(par[i].dissipation == rr.series[i].dissipation);
    CHECK(par[i].time == rr.series[i].time);
  }
  const auto path = std::filesystem::temp_directory_path() / "nlt_energy.csv";
  write_energy_csv(rr.series, path.string());
  std::ifstream is(path);
  std::string header;
  std::getline(is, header);
  CHECK(header == "t,l2w,hkw,dissipation,sup,grad_sup");
  std::size_t rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  CHECK(rows == rr.series.size());
  std::filesystem::remove(path);
}

TEST_CASE("Cordoba-Cordoba defect") {
  const Grid g(256, 2.0 * kPi);
  const CordobaReport k = check_cordoba_inequality(Field::constant(g, 1.5));
  CHECK(std::abs(k.max_defect) < 1e-12);
  CHECK(k.passed);

  double prev = 0.0;
  for (std::size_t n : {512u, 1024u, 2048u}) {
    const Grid gn(n, 2.0 * kPi);
    const CordobaReport r = check_cordoba_inequality(Field::sample(gn, [](double x) { return 2.0 + std::sin(x); }));
    CHECK(r.max_defect <= 1e-6 * 27.0);
    CHECK(r.scale == doctest::Approx(27.0).epsilon(1e-6));
    CHECK(r.passed);
    if (n > 512) CHECK(r.max_defect <= prev + 1e-12 * r.scale);
    prev = r.max_defect;
  }
  CHECK_THROWS_AS(check_cordoba_inequality(Field::sample(g, [](double x) { return std::sin(x); })),
                  ParameterError);
  CHECK_THROWS_AS(check_cordoba_inequality(Field(g)), ParameterError);
}

TEST_CASE("energy growth fit") {
  // Pure fractional heat, unit weight: dE/dt = -2 nu D.
  SolverConfig heat = subcritical(512);
  heat.nonlinear = false;
  heat.dt = 2e-3;
  heat.probes = uniform_probes(2.0, 400);
  const Field theta0 = Field::sample(heat.grid(), [](double x) { return std::exp(-x * x); });
  const RunRecord h = run_with_diagnostics(heat, theta0, Weight::unit());
  const EnergyGrowthReport hr = check_energy_growth(h.series, heat.nu);
  REQUIRE(hr.fit_defined);
  CHECK(hr.c_fit <= 1e-3);
  CHECK(hr.integral_form_holds);
  CHECK(hr.integral_consistent);

  // Subcritical nonlinear run, weighted: stable under N -> 2N.
  std::vector<double> fits;
  for (std::size_t n : {1024u, 2048u}) {
    const SolverConfig c = subcritical(n);
    InitialDataSpec spec;
    const RunRecord r = run_with_diagnostics(c, initial_data(spec, c.grid()), Weight(0.5, 2));
    const EnergyGrowthReport e = check_energy_growth(r.series, c.nu);
    REQUIRE(e.fit_defined);
    CHECK(std::isfinite(e.c_fit));
    CHECK(e.integral_form_holds);
    CHECK(e.integral_consistent);
    const EnergyGrowthReport ek = check_energy_growth(r.series, c.nu, EnergyNorm::hk);
    CHECK(ek.fit_defined);
    fits.push_back(e.c_fit);
  }
  CHECK(rel_drift(fits[0], fits[1]) < 0.2);

  const std::vector<EnergyRecord> one(1);
  CHECK(!check_energy_growth(one, 1.0).fit_defined);
  std::vector<EnergyRecord> zeros(5);
  for (std::size_t i = 0; i < zeros.size(); ++i) zeros[i].time = static_cast<double>(i);
  CHECK(!check_energy_growth(zeros, 1.0).fit_defined);
}

TEST_CASE("maximum principle") {
  SolverConfig c = subcritical(512);
  const RunRecord k = run_with_diagnostics(c, Field::constant(c.grid(), 1.25), Weight::unit());
  const MaximumPrincipleReport kr = check_maximum_principle(k.series);
  CHECK(kr.passed);
  CHECK(kr.max_sup == doctest::Approx(1.25).epsilon(1e-14));

  InitialDataSpec spec;
  RunRecord r = run_with_diagnostics(c, initial_data(spec, c.grid()), Weight::unit());
  CHECK(check_maximum_principle(r.series).passed);

  // Decay has already lowered the mid-series sup, so scale relative to the start.
  r.series[r.series.size() / 2].sup_norm = 1.01 * r.series.front().sup_norm;
  const MaximumPrincipleReport bad = check_maximum_principle(r.series);
  CHECK(!bad.passed);
  CHECK(bad.worst_time == r.series[r.series.size() / 2].time);
}

TEST_CASE("H2 monitor coefficients are finite and refinement-stable") {
  std::vector<H2MonitorReport> fits;
  for (std::size_t n : {1024u, 2048u}) {
    SolverConfig c;
    c.alpha = 0.6;
    c.nu = 1.0;
    c.n_points = n;
    c.length = 40.0;
    c.t_final = 0.25;
    c.dt = 1e-3;
    c.probes = uniform_probes(0.25, 50);
    InitialDataSpec spec;
    const RunRecord r = run_with_diagnostics(c, initial_data(spec, c.grid()), Weight::supercritical(0.25, 2, 0.6));
    const H2MonitorReport h = fit_h2_monitor(r.series, c.nu);
    REQUIRE(h.fit_defined);
    CHECK(h.finite);
    fits.push_back(h);
  }
  CHECK(rel_drift(fits[0].c2, fits[1].c2) < 0.25);
  CHECK(rel_drift(fits[0].c4, fits[1].c4) < 0.25);
  CHECK(rel_drift(fits[0].c16_3, fits[1].c16_3) < 0.25);
  CHECK(!fit_h2_monitor({}, 1.0).fit_defined);
}

TEST_CASE("Maz'ya pointwise inequality") {
  const Grid g(512, 40.0);
  const PointwiseSobolevReport k = check_pointwise_sobolev_inequality(Field::constant(g, 3.0), 0.5);
  CHECK(k.lhs.max_abs() == 0.0);
  CHECK(k.rhs.max_abs() < 1e-6);
  CHECK(!k.degenerate);

  std::vector<double> fits;
  for (std::size_t n : {1024u, 2048u}) {
    const Grid gn(n, 40.0);
    const Field theta = Field::sample(gn, [](double x) { return std::exp(-x * x); });
    const PointwiseSobolevReport r = check_pointwise_sobolev_inequality(theta, 0.5);
    CHECK(std::isfinite(r.fitted_constant));
    CHECK(r.fitted_constant > 0.0);
    CHECK(!r.degenerate);
    const PointwiseSobolevReport r2 = check_pointwise_sobolev_inequality(2.0 * theta, 0.5);
    CHECK(std::abs(r2.fitted_constant - r.fitted_constant) <= 1e-12 * r.fitted_constant);
    fits.push_back(r.fitted_constant);
  }
  CHECK(rel_drift(fits[0], fits[1]) < 0.1);
  CHECK_THROWS_AS(check_pointwise_sobolev_inequality(Field(g), 1.0), ParameterError);
}
