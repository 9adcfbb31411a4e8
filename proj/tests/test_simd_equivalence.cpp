#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "nlt/pv_quadrature.hpp"
#include "nlt/maximal.hpp"
#include "nlt/simd/kernels.hpp"

using nlt::simd::Backend;
using nlt::simd::KernelTable;

namespace {

std::vector<double> randoms(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

std::vector<const KernelTable*> vector_tables() {
  std::vector<const KernelTable*> out;
  for (Backend b : nlt::simd::available_backends()) {
    if (b == Backend::avx2) {
#if defined(__x86_64__)
      out.push_back(&nlt::simd::avx2_kernels());
#endif
    }
    if (b == Backend::neon) {
#if defined(__aarch64__)
      out.push_back(&nlt::simd::neon_kernels());
#endif
    }
  }
  return out;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i] - b[i]) <= tol * (1.0 + std::abs(a[i])));
  }
}

const std::size_t kSizes[] = {0, 1, 2, 3, 5, 8, 13, 64, 1027};
constexpr std::ptrdiff_t kPad = 40;

}  // namespace

TEST_CASE("scalar backend is always available and selectable") {
  const auto avail = nlt::simd::available_backends();
  REQUIRE(!avail.empty());
  CHECK(avail.front() == Backend::scalar);
  const Backend before = nlt::simd::active_backend();
  nlt::simd::set_backend(Backend::scalar);
  CHECK(nlt::simd::active_backend() == Backend::scalar);
  CHECK(nlt::simd::backend_name(Backend::scalar) == "scalar");
  nlt::simd::set_backend(before);
}

TEST_CASE("unsupported backend is rejected") {
  const auto avail = nlt::simd::available_backends();
  for (Backend b : {Backend::avx2, Backend::neon}) {
    if (std::find(avail.begin(), avail.end(), b) == avail.end()) {
      CHECK_THROWS_AS(nlt::simd::set_backend(b), std::invalid_argument);
    }
  }
}

TEST_CASE("vector kernels match scalar reference") {
  const KernelTable& ref = nlt::simd::scalar_kernels();
  const auto tables = vector_tables();
  if (tables.empty()) MESSAGE("no vector backend on this CPU; equivalence checks skipped");
  for (const KernelTable* vt : tables) {
    CAPTURE(nlt::simd::backend_name(vt->backend));
    for (std::size_t n : kSizes) {
      CAPTURE(n);
      const auto a = randoms(n + 2 * kPad, 1 + static_cast<unsigned>(n));
      const auto b = randoms(n + 2 * kPad, 2 + static_cast<unsigned>(n));
      const auto c = randoms(n + 2 * kPad, 3 + static_cast<unsigned>(n));
      const double* pa = a.data() + kPad;
      const double* pb = b.data() + kPad;

      SUBCASE("multiply") {
        std::vector<double> r1(n), r2(n);
        ref.multiply(r1.data(), pa, pb, n);
        vt->multiply(r2.data(), pa, pb, n);
        check_close(r1, r2, 0.0);
      }
      SUBCASE("reductions") {
        CHECK(ref.max_abs(pa, n) == vt->max_abs(pa, n));
        const double s1 = ref.weighted_sum_squares(pa, pb, n);
        const double s2 = vt->weighted_sum_squares(pa, pb, n);
        CHECK(std::abs(s1 - s2) <= 1e-13 * (1.0 + static_cast<double>(n)));
      }
      SUBCASE("complex scale and combine") {
        std::vector<std::complex<double>> z1(n), z2(n), y(n), o1(n), o2(n);
        for (std::size_t i = 0; i < n; ++i) {
          z1[i] = z2[i] = {a[i], b[i]};
          y[i] = {c[i], a[i]};
        }
        ref.scale_complex(z1.data(), pb, n);
        vt->scale_complex(z2.data(), pb, n);
        for (std::size_t i = 0; i < n; ++i) CHECK(z1[i] == z2[i]);
        ref.combine_complex(o1.data(), z1.data(), pa, y.data(), pb, n);
        vt->combine_complex(o2.data(), z1.data(), pa, y.data(), pb, n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(o1[i] - o2[i]) <= 1e-15);
      }
      SUBCASE("offset accumulators") {
        for (std::ptrdiff_t m : {1, 3, 17, 40}) {
          CAPTURE(m);
          std::vector<double> r1(c.begin(), c.begin() + n), r2 = r1;
          ref.accumulate_second_difference(r1.data(), pa, m, 0.37, n);
          vt->accumulate_second_difference(r2.data(), pa, m, 0.37, n);
          check_close(r1, r2, 1e-15);
          ref.accumulate_squared_difference(r1.data(), pa, m, 1.3, n);
          vt->accumulate_squared_difference(r2.data(), pa, m, 1.3, n);
          check_close(r1, r2, 1e-15);
          ref.accumulate_commutator_difference(r1.data(), pa, pb, m, -0.8, n);
          vt->accumulate_commutator_difference(r2.data(), pa, pb, m, -0.8, n);
          check_close(r1, r2, 1e-15);
        }
      }
      SUBCASE("window difference and running max") {
        std::vector<double> r1(n), r2(n);
        ref.window_difference(r1.data(), pa, -5, 9, 0.25, n);
        vt->window_difference(r2.data(), pa, -5, 9, 0.25, n);
        check_close(r1, r2, 0.0);
        std::vector<double> m1(pa, pa + n), m2 = m1;
        ref.max_inplace(m1.data(), pb, n);
        vt->max_inplace(m2.data(), pb, n);
        check_close(m1, m2, 0.0);
      }
    }
  }
}

TEST_CASE("operators agree across backends") {
  const nlt::Grid g(512, 40.0);
  const auto f = nlt::Field::sample(g, [](double x) { return std::exp(-x * x) * (1.0 + 0.3 * x); });
  const Backend before = nlt::simd::active_backend();
  nlt::simd::set_backend(Backend::scalar);
  const nlt::Field pv_ref = nlt::fractional_laplacian_pv(f, 1.3);
  const nlt::Field mf_ref = nlt::maximal_function(f);
  for (Backend b : nlt::simd::available_backends()) {
    nlt::simd::set_backend(b);
    CAPTURE(nlt::simd::backend_name(b));
    const nlt::Field pv = nlt::fractional_laplacian_pv(f, 1.3);
    const nlt::Field mf = nlt::maximal_function(f);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(std::abs(pv[i] - pv_ref[i]) <= 1e-12);
      CHECK(std::abs(mf[i] - mf_ref[i]) <= 1e-14);
    }
  }
  nlt::simd::set_backend(before);
}
