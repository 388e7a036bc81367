#include <immintrin.h>

#include <cmath>

#include "cfsgauge/simd/mode_sum.hpp"

namespace cfsgauge::simd {

namespace {

// Cody-Waite split of pi/2 and the fdlibm minimax coefficients on [-pi/4, pi/4].
constexpr double kTwoOverPi = 6.36619772367581382433e-01;
constexpr double kPio2_1 = 1.57079632673412561417e+00;
constexpr double kPio2_2 = 6.07710050630396597660e-11;
constexpr double kPio2_3 = 2.02226624871116645580e-21;

constexpr double kS1 = -1.66666666666666324348e-01;
constexpr double kS2 = 8.33333333332248946124e-03;
constexpr double kS3 = -1.98412698298579493134e-04;
constexpr double kS4 = 2.75573137070700676789e-06;
constexpr double kS5 = -2.50507602534068634195e-08;
constexpr double kS6 = 1.58969099521155010221e-10;

constexpr double kC1 = 4.16666666666666019037e-02;
constexpr double kC2 = -1.38888888888741095749e-03;
constexpr double kC3 = 2.48015872894767294178e-05;
constexpr double kC4 = -2.75573143513906633035e-07;
constexpr double kC5 = 2.08757232129817482790e-09;
constexpr double kC6 = -1.13596475577881948265e-11;

// 2^52 + 2^51: adding it to an integral double leaves the integer, two's
// complement, in the low mantissa bits.
constexpr double kIntMagic = 6755399441055744.0;

inline void sincos4(__m256d x, __m256d* s_out, __m256d* c_out) {
  const __m256d j = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d y = _mm256_fnmadd_pd(j, _mm256_set1_pd(kPio2_1), x);
  y = _mm256_fnmadd_pd(j, _mm256_set1_pd(kPio2_2), y);
  y = _mm256_fnmadd_pd(j, _mm256_set1_pd(kPio2_3), y);

  const __m256d z = _mm256_mul_pd(y, y);

  __m256d ps = _mm256_set1_pd(kS6);
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kS5));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kS4));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kS3));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kS2));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kS1));
  const __m256d sin_r = _mm256_fmadd_pd(_mm256_mul_pd(y, z), ps, y);

  __m256d pc = _mm256_set1_pd(kC6);
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kC5));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kC4));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kC3));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kC2));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kC1));
  const __m256d hz = _mm256_mul_pd(_mm256_set1_pd(0.5), z);
  const __m256d w = _mm256_sub_pd(_mm256_set1_pd(1.0), hz);
  // w + ((1 - w) - hz) recovers the rounding of 1 - hz
  const __m256d corr = _mm256_sub_pd(_mm256_sub_pd(_mm256_set1_pd(1.0), w), hz);
  const __m256d cos_r = _mm256_add_pd(w, _mm256_fmadd_pd(_mm256_mul_pd(z, z), pc, corr));

  const __m256i q = _mm256_and_si256(_mm256_castpd_si256(_mm256_add_pd(j, _mm256_set1_pd(kIntMagic))),
                                     _mm256_set1_epi64x(3));
  const __m256d swap =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q, _mm256_set1_epi64x(1)),
                                             _mm256_set1_epi64x(1)));
  const __m256d sin_sign = _mm256_castsi256_pd(
      _mm256_slli_epi64(_mm256_and_si256(q, _mm256_set1_epi64x(2)), 62));
  const __m256d cos_sign = _mm256_castsi256_pd(_mm256_slli_epi64(
      _mm256_and_si256(_mm256_add_epi64(q, _mm256_set1_epi64x(1)), _mm256_set1_epi64x(2)), 62));

  *s_out = _mm256_xor_pd(_mm256_blendv_pd(sin_r, cos_r, swap), sin_sign);
  *c_out = _mm256_xor_pd(_mm256_blendv_pd(cos_r, sin_r, swap), cos_sign);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void sincos_avx2(const double* x, double* s, double* c, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vs, vc;
    sincos4(_mm256_loadu_pd(x + i), &vs, &vc);
    _mm256_storeu_pd(s + i, vs);
    _mm256_storeu_pd(c + i, vc);
  }
  if (i < n) {
    alignas(32) double xb[4] = {0.0, 0.0, 0.0, 0.0};
    alignas(32) double sb[4];
    alignas(32) double cb[4];
    for (std::size_t k = 0; i + k < n; ++k) xb[k] = x[i + k];
    __m256d vs, vc;
    sincos4(_mm256_load_pd(xb), &vs, &vc);
    _mm256_store_pd(sb, vs);
    _mm256_store_pd(cb, vc);
    for (std::size_t k = 0; i + k < n; ++k) {
      s[i + k] = sb[k];
      c[i + k] = cb[k];
    }
  }
}

ModeSums mode_sum_avx2(const ModeArrays& modes, double dt, const double dx[3]) {
  const __m256d vdt = _mm256_set1_pd(dt);
  const __m256d vx1 = _mm256_set1_pd(dx[0]);
  const __m256d vx2 = _mm256_set1_pd(dx[1]);
  const __m256d vx3 = _mm256_set1_pd(dx[2]);

  __m256d zr = _mm256_setzero_pd(), zi = _mm256_setzero_pd();
  __m256d r0 = zr, i0 = zr, r1 = zr, i1 = zr, r2 = zr, i2 = zr, r3 = zr, i3 = zr;

  auto accumulate = [&](__m256d w, __m256d a0, __m256d a1, __m256d a2, __m256d a3) {
    const __m256d spatial = _mm256_fmadd_pd(a3, vx3, _mm256_fmadd_pd(a2, vx2, _mm256_mul_pd(a1, vx1)));
    const __m256d theta = _mm256_sub_pd(spatial, _mm256_mul_pd(a0, vdt));
    __m256d s, c;
    sincos4(theta, &s, &c);
    const __m256d re = _mm256_mul_pd(w, c);
    const __m256d im = _mm256_mul_pd(w, s);
    zr = _mm256_add_pd(zr, re);
    zi = _mm256_add_pd(zi, im);
    r0 = _mm256_fmadd_pd(re, a0, r0);
    i0 = _mm256_fmadd_pd(im, a0, i0);
    r1 = _mm256_fmadd_pd(re, a1, r1);
    i1 = _mm256_fmadd_pd(im, a1, i1);
    r2 = _mm256_fmadd_pd(re, a2, r2);
    i2 = _mm256_fmadd_pd(im, a2, i2);
    r3 = _mm256_fmadd_pd(re, a3, r3);
    i3 = _mm256_fmadd_pd(im, a3, i3);
  };

  const std::size_t n = modes.size();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    accumulate(_mm256_loadu_pd(&modes.weight[j]), _mm256_loadu_pd(&modes.k0[j]),
               _mm256_loadu_pd(&modes.k1[j]), _mm256_loadu_pd(&modes.k2[j]),
               _mm256_loadu_pd(&modes.k3[j]));
  }
  if (j < n) {
    // zero-weight padding contributes nothing
    alignas(32) double w[4] = {0, 0, 0, 0}, a0[4] = {0, 0, 0, 0}, a1[4] = {0, 0, 0, 0},
                       a2[4] = {0, 0, 0, 0}, a3[4] = {0, 0, 0, 0};
    for (std::size_t k = 0; j + k < n; ++k) {
      w[k] = modes.weight[j + k];
      a0[k] = modes.k0[j + k];
      a1[k] = modes.k1[j + k];
      a2[k] = modes.k2[j + k];
      a3[k] = modes.k3[j + k];
    }
    accumulate(_mm256_load_pd(w), _mm256_load_pd(a0), _mm256_load_pd(a1), _mm256_load_pd(a2),
               _mm256_load_pd(a3));
  }

  ModeSums out;
  out.scalar = {hsum(zr), hsum(zi)};
  out.vector[0] = {hsum(r0), hsum(i0)};
  out.vector[1] = {hsum(r1), hsum(i1)};
  out.vector[2] = {hsum(r2), hsum(i2)};
  out.vector[3] = {hsum(r3), hsum(i3)};
  return out;
}

}  // namespace cfsgauge::simd
