#include "nlt/maximal.hpp"

#include <cmath>

#include "nlt/simd/kernels.hpp"

namespace nlt {

std::vector<std::size_t> maximal_radii(const Grid& g) {
  // Windows stay below N nodes so no node is counted twice.
  const std::size_t cap = g.size() / 2 - 1;
  std::vector<std::size_t> r{0};
  for (std::size_t R = 1; R < cap; R *= 2) r.push_back(R);
  r.push_back(cap);
  return r;
}

Field window_average(const Field& f, std::size_t radius) {
  if (radius == 0) return f;
  const std::size_t n = f.size();
  std::vector<double> prefix(n + 2 * radius + 1, 0.0);
  for (std::size_t i = 0; i < n + 2 * radius; ++i) {
    prefix[i + 1] = prefix[i] + f[(i + n - radius % n) % n];
  }
  Field out(f.grid);
  simd::kernels().window_difference(out.values.data(), prefix.data(), 0,
                                    static_cast<std::ptrdiff_t>(2 * radius + 1),
                                    1.0 / static_cast<double>(2 * radius + 1), n);
  return out;
}

Field maximal_function(const Field& f) {
  Field a(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) a[i] = std::abs(f[i]);
  Field m = a;
  const auto& k = simd::kernels();
  for (std::size_t R : maximal_radii(f.grid)) {
    if (R == 0) continue;
    const Field avg = window_average(a, R);
    k.max_inplace(m.values.data(), avg.values.data(), m.size());
  }
  return m;
}

}  // namespace nlt
