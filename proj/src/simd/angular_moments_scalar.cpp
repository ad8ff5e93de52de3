#include <cmath>

#include "axiskit/simd/angular_moments.hpp"

namespace axiskit::simd {

MomentSums angular_moments_scalar(const NodeBlock& nodes, double d2, double b) {
  // Four interleaved partial sums, reduced pairwise at the end, so that the
  // summation order matches the 4-lane vector variant.
  double k0[4] = {}, ks[4] = {}, kc[4] = {}, g0[4] = {}, gs[4] = {}, gc[4] = {};
  for (std::size_t i = 0; i < nodes.n; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const std::size_t j = i + l;
      const double d = d2 + b * nodes.sin2[j];
      const double inv = 1.0 / (d * std::sqrt(d));
      const double tk = nodes.w_kronrod[j] * inv;
      const double tg = nodes.w_gauss[j] * inv;
      k0[l] += tk;
      ks[l] += tk * nodes.sin2[j];
      kc[l] += tk * nodes.cos2[j];
      g0[l] += tg;
      gs[l] += tg * nodes.sin2[j];
      gc[l] += tg * nodes.cos2[j];
    }
  }
  auto reduce = [](const double* v) { return (v[0] + v[2]) + (v[1] + v[3]); };
  return {reduce(k0), reduce(ks), reduce(kc), reduce(g0), reduce(gs), reduce(gc)};
}

}  // namespace axiskit::simd
