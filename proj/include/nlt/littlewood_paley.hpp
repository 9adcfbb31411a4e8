#pragma once
// Dyadic Littlewood-Paley filter bank on the periodic grid.
//
// phi0(xi) = 1 - S(2|xi| - 1) with S the quintic smoothstep, so phi0 = 1 on
// |xi| <= 1/2 and 0 on |xi| >= 1. psi0(xi) = phi0(xi/2) - phi0(xi).
// S_j and Delta_j apply phi0(2^{-j} k) and psi0(2^{-j} k) to wavenumbers k.
// Blocks j_min..j_max telescope to phi0(2^{-(j_max+1)} k), so the bank
// reconstructs exactly every field supported in |k| <= 2^{j_max}.

#include <string>
#include <utility>
#include <vector>

#include "nlt/field.hpp"
#include "nlt/weights.hpp"

namespace nlt {

double smoothstep5(double t);
double lp_phi0(double xi);
double lp_psi0(double xi);

class FilterBank {
 public:
  /// Throws RangeError if 2^{j_max} exceeds the Nyquist wavenumber or the range is empty.
  FilterBank(const Grid& g, int j_min, int j_max);
  /// j_min = round(log2(4 * 2pi / L)), j_max = floor(log2(k_nyquist / 4)).
  static FilterBank for_grid(const Grid& g);

  const Grid& grid() const { return grid_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  int bands() const { return j_max_ - j_min_ + 1; }
  /// Largest wavenumber the bank reconstructs, 2^{j_max}.
  double coverage() const;

  /// psi0(2^{-j} k) on the half spectrum, j in [j_min, j_max].
  const std::vector<double>& band(int j) const;
  /// phi0(2^{-j} k), j in [j_min, j_max + 1].
  const std::vector<double>& low_pass(int j) const;

  /// max over |k| <= coverage of |phi0(2^{-j_min}k) + sum_j psi0(2^{-j}k) - 1|.
  double partition_residual() const;

 private:
  Grid grid_;
  int j_min_, j_max_;
  std::vector<std::vector<double>> bands_;
  std::vector<std::vector<double>> lows_;
};

enum class LpKind { band, low_pass };

Field lp_project(const Field& f, const FilterBank& bank, int j, LpKind kind);

/// S_{j_min} f + sum_j Delta_j f.
Field lp_reconstruct(const Field& f, const FilterBank& bank);

/// sqrt(dx * sum w f^2).
double weighted_l2_norm(const Field& f, const Weight& w);
double weighted_l2_norm(const Field& f, const Field& w_samples);

enum class NormRoute { multiplier, lp_sum };
enum class Homogeneity { homogeneous, inhomogeneous };

struct SobolevNorm {
  double value = 0.0;
  /// Set when a non-unit weight is combined with |s| >= 1/2, outside the
  /// range where the weighted space is defined by these formulas.
  bool outside_validated_range = false;
};

/// multiplier: ||Lambda^s f||_w (+ ||f||_w if inhomogeneous).
/// lp_sum: (2^{2(j_min-1)s} ||S_{j_min} f||_w^2 + sum_j 2^{2js} ||Delta_j f||_w^2)^{1/2};
///         the inhomogeneous version adds the s = 0 sum.
SobolevNorm weighted_sobolev_norm(const Field& f, double s, const Weight& w, NormRoute route,
                                  Homogeneity h, const FilterBank* bank = nullptr);

struct BernsteinReport {
  double s = 0.0;
  std::vector<std::pair<int, double>> ratios;  ///< (j, ratio) for active bands
  double min_ratio = 0.0, max_ratio = 0.0;
  bool empty = true;
};

BernsteinReport bernstein_check(const FilterBank& bank, const Field& f, double s, const Weight& w,
                                double noise_floor = 1e-10);

struct Paraproduct {
  Field low_high;  ///< sum_q S_{q+1} f Delta_q g
  Field high_low;  ///< sum_j Delta_j f S_j g
};

/// Both sums are dealiased, so low_high + high_low = dealias(f g). Throws
/// RangeError if f or g carries energy beyond the bank coverage.
Paraproduct paraproduct_split(const Field& f, const Field& g, const FilterBank& bank);

struct BandEnergy {
  int j;
  double unweighted;
  double weighted;
};

std::vector<BandEnergy> band_energies(const Field& f, const FilterBank& bank, const Weight& w);
void write_band_energies_csv(const std::vector<BandEnergy>& rows, const std::string& path);

}  // namespace nlt
