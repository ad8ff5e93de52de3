#include <immintrin.h>

#include "axiskit/simd/angular_moments.hpp"

namespace axiskit::simd {

namespace {

inline double reduce(__m256d v) {
  // (v0 + v2) + (v1 + v3), same association as the scalar reference.
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

MomentSums angular_moments_avx2(const NodeBlock& nodes, double d2, double b) {
  const __m256d vd2 = _mm256_set1_pd(d2);
  const __m256d vb = _mm256_set1_pd(b);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d k0 = _mm256_setzero_pd(), ks = _mm256_setzero_pd(), kc = _mm256_setzero_pd();
  __m256d g0 = _mm256_setzero_pd(), gs = _mm256_setzero_pd(), gc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < nodes.n; i += 4) {
    const __m256d s = _mm256_loadu_pd(nodes.sin2 + i);
    const __m256d c = _mm256_loadu_pd(nodes.cos2 + i);
    const __m256d wk = _mm256_loadu_pd(nodes.w_kronrod + i);
    const __m256d wg = _mm256_loadu_pd(nodes.w_gauss + i);
    // No FMA contraction here: keeps D bit-identical to the scalar variant.
    const __m256d d = _mm256_add_pd(vd2, _mm256_mul_pd(vb, s));
    const __m256d inv = _mm256_div_pd(one, _mm256_mul_pd(d, _mm256_sqrt_pd(d)));
    const __m256d tk = _mm256_mul_pd(wk, inv);
    const __m256d tg = _mm256_mul_pd(wg, inv);
    k0 = _mm256_add_pd(k0, tk);
    ks = _mm256_add_pd(ks, _mm256_mul_pd(tk, s));
    kc = _mm256_add_pd(kc, _mm256_mul_pd(tk, c));
    g0 = _mm256_add_pd(g0, tg);
    gs = _mm256_add_pd(gs, _mm256_mul_pd(tg, s));
    gc = _mm256_add_pd(gc, _mm256_mul_pd(tg, c));
  }
  return {reduce(k0), reduce(ks), reduce(kc), reduce(g0), reduce(gs), reduce(gc)};
}

}  // namespace axiskit::simd
