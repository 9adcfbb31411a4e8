#include "nlt/littlewood_paley.hpp"

#include <cmath>
#include <fstream>

#include "nlt/error.hpp"
#include "nlt/fft.hpp"
#include "nlt/simd/kernels.hpp"
#include "nlt/spectral_ops.hpp"

namespace nlt {

double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

double lp_phi0(double xi) { return 1.0 - smoothstep5(2.0 * std::abs(xi) - 1.0); }

double lp_psi0(double xi) { return lp_phi0(0.5 * xi) - lp_phi0(xi); }

FilterBank::FilterBank(const Grid& g, int j_min, int j_max) : grid_(g), j_min_(j_min), j_max_(j_max) {
  if (j_max < j_min) throw RangeError("filter bank needs j_min <= j_max");
  if (std::ldexp(1.0, j_max) > g.k_nyquist()) {
    throw RangeError("2^j_max = " + std::to_string(std::ldexp(1.0, j_max)) +
                     " exceeds the Nyquist wavenumber " + std::to_string(g.k_nyquist()));
  }
  const std::size_t modes = g.modes();
  for (int j = j_min; j <= j_max + 1; ++j) {
    std::vector<double> lo(modes), bd(modes);
    const double scale = std::ldexp(1.0, -j);
    for (std::size_t m = 0; m < modes; ++m) {
      const double xi = scale * g.wavenumber(m);
      lo[m] = lp_phi0(xi);
      bd[m] = lp_psi0(xi);
    }
    lows_.push_back(std::move(lo));
    if (j <= j_max) bands_.push_back(std::move(bd));
  }
  const double residual = partition_residual();
  if (residual > 1e-12) {
    throw Error("filter bank partition of unity failed: residual " + std::to_string(residual));
  }
}

FilterBank FilterBank::for_grid(const Grid& g) {
  const int j_min = static_cast<int>(std::lround(std::log2(4.0 * g.k_fundamental())));
  const int j_max = static_cast<int>(std::floor(std::log2(g.k_nyquist() / 4.0)));
  return FilterBank(g, j_min, j_max);
}

double FilterBank::coverage() const { return std::ldexp(1.0, j_max_); }

const std::vector<double>& FilterBank::band(int j) const {
  if (j < j_min_ || j > j_max_) throw RangeError("band index " + std::to_string(j) + " out of range");
  return bands_[static_cast<std::size_t>(j - j_min_)];
}

const std::vector<double>& FilterBank::low_pass(int j) const {
  if (j < j_min_ || j > j_max_ + 1) {
    throw RangeError("low-pass index " + std::to_string(j) + " out of range");
  }
  return lows_[static_cast<std::size_t>(j - j_min_)];
}

double FilterBank::partition_residual() const {
  double worst = 0.0;
  for (std::size_t m = 0; m < grid_.modes(); ++m) {
    if (grid_.wavenumber(m) > coverage()) break;
    double s = lows_.front()[m];
    for (const auto& b : bands_) s += b[m];
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

namespace {

Field apply_symbol(const SpectralField& F, const std::vector<double>& symbol) {
  SpectralField G = F;
  multiply_in_place(G, symbol);
  return inverse_transform(G);
}

void require_within_coverage(const SpectralField& F, const FilterBank& bank, const char* what) {
  double peak = 0.0, beyond = 0.0;
  for (std::size_t m = 0; m < F.size(); ++m) {
    const double a = std::abs(F[m]);
    peak = std::max(peak, a);
    if (F.grid.wavenumber(m) > bank.coverage()) beyond = std::max(beyond, a);
  }
  if (beyond > 1e-12 * peak) {
    throw RangeError(std::string(what) + " has spectrum beyond the filter bank coverage");
  }
}

}  // namespace

Field lp_project(const Field& f, const FilterBank& bank, int j, LpKind kind) {
  const auto& symbol = kind == LpKind::band ? bank.band(j) : bank.low_pass(j);
  return apply_symbol(forward_transform(f), symbol);
}

Field lp_reconstruct(const Field& f, const FilterBank& bank) {
  const SpectralField F = forward_transform(f);
  Field out = apply_symbol(F, bank.low_pass(bank.j_min()));
  for (int j = bank.j_min(); j <= bank.j_max(); ++j) out += apply_symbol(F, bank.band(j));
  return out;
}

double weighted_l2_norm(const Field& f, const Field& w_samples) {
  const double s = simd::kernels().weighted_sum_squares(w_samples.values.data(), f.values.data(),
                                                        f.size());
  return std::sqrt(s * f.grid.dx());
}

double weighted_l2_norm(const Field& f, const Weight& w) {
  if (w.is_unit()) return weighted_l2_norm(f, Field::constant(f.grid, 1.0));
  return weighted_l2_norm(f, w.sample(f.grid));
}

namespace {

double lp_sum(const SpectralField& F, const FilterBank& bank, double s, const Field& ws) {
  const double low = weighted_l2_norm(apply_symbol(F, bank.low_pass(bank.j_min())), ws);
  double acc = std::pow(2.0, 2.0 * (bank.j_min() - 1) * s) * low * low;
  for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
    const double b = weighted_l2_norm(apply_symbol(F, bank.band(j)), ws);
    acc += std::pow(2.0, 2.0 * j * s) * b * b;
  }
  return std::sqrt(acc);
}

}  // namespace

SobolevNorm weighted_sobolev_norm(const Field& f, double s, const Weight& w, NormRoute route,
                                  Homogeneity h, const FilterBank* bank) {
  SobolevNorm out;
  out.outside_validated_range = !w.is_unit() && std::abs(s) >= 0.5;
  const Field ws = w.is_unit() ? Field::constant(f.grid, 1.0) : w.sample(f.grid);
  const SpectralField F = forward_transform(f);
  if (route == NormRoute::multiplier) {
    out.value = weighted_l2_norm(apply_symbol(F, abs_k_power(f.grid, s)), ws);
    if (h == Homogeneity::inhomogeneous) out.value += weighted_l2_norm(f, ws);
    return out;
  }
  const FilterBank local = bank ? *bank : FilterBank::for_grid(f.grid);
  require_within_coverage(F, local, "field");
  out.value = lp_sum(F, local, s, ws);
  if (h == Homogeneity::inhomogeneous) out.value += lp_sum(F, local, 0.0, ws);
  return out;
}

BernsteinReport bernstein_check(const FilterBank& bank, const Field& f, double s, const Weight& w,
                                double noise_floor) {
  BernsteinReport r;
  r.s = s;
  const Field ws = w.is_unit() ? Field::constant(f.grid, 1.0) : w.sample(f.grid);
  const SpectralField F = forward_transform(f);
  const std::vector<double> ls = abs_k_power(f.grid, s);
  for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
    SpectralField B = F;
    multiply_in_place(B, bank.band(j));
    const double base = weighted_l2_norm(inverse_transform(B), ws);
    if (base <= noise_floor) continue;
    multiply_in_place(B, ls);
    const double ratio = weighted_l2_norm(inverse_transform(B), ws) / (std::pow(2.0, j * s) * base);
    r.ratios.emplace_back(j, ratio);
    if (r.empty) {
      r.min_ratio = r.max_ratio = ratio;
      r.empty = false;
    }
    r.min_ratio = std::min(r.min_ratio, ratio);
    r.max_ratio = std::max(r.max_ratio, ratio);
  }
  return r;
}

Paraproduct paraproduct_split(const Field& f, const Field& g, const FilterBank& bank) {
  const SpectralField F = forward_transform(f);
  const SpectralField G = forward_transform(g);
  require_within_coverage(F, bank, "first factor");
  require_within_coverage(G, bank, "second factor");

  const int K = bank.j_min(), J = bank.j_max();
  // Block K-1 is the low-pass remainder S_K.
  auto g_block = [&](int q) { return apply_symbol(G, q < K ? bank.low_pass(K) : bank.band(q)); };
  Paraproduct out{Field(f.grid), Field(f.grid)};
  for (int q = K - 1; q <= J; ++q) {
    out.low_high += pointwise(apply_symbol(F, bank.low_pass(q + 1)), g_block(q));
  }
  for (int j = K; j <= J; ++j) {
    out.high_low += pointwise(apply_symbol(F, bank.band(j)), apply_symbol(G, bank.low_pass(j)));
  }
  out.low_high = dealias(out.low_high);
  out.high_low = dealias(out.high_low);
  return out;
}

std::vector<BandEnergy> band_energies(const Field& f, const FilterBank& bank, const Weight& w) {
  const Field ws = w.is_unit() ? Field::constant(f.grid, 1.0) : w.sample(f.grid);
  const Field ones = Field::constant(f.grid, 1.0);
  const SpectralField F = forward_transform(f);
  std::vector<BandEnergy> rows;
  for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
    const Field b = apply_symbol(F, bank.band(j));
    const double u = weighted_l2_norm(b, ones), v = weighted_l2_norm(b, ws);
    rows.push_back({j, u * u, v * v});
  }
  return rows;
}

void write_band_energies_csv(const std::vector<BandEnergy>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out.precision(17);
  out << "j,unweighted_energy,weighted_energy\n";
  for (const auto& r : rows) out << r.j << ',' << r.unweighted << ',' << r.weighted << '\n';
}

}  // namespace nlt
