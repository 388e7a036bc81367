#include <cmath>

#include "cfsgauge/simd/mode_sum.hpp"

namespace cfsgauge::simd {

ModeSums mode_sum_scalar(const ModeArrays& modes, double dt, const double dx[3]) {
  double zr = 0.0, zi = 0.0;
  double vr[4] = {0.0, 0.0, 0.0, 0.0};
  double vi[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t j = 0; j < modes.size(); ++j) {
    const double theta =
        -(modes.k0[j] * dt - (modes.k1[j] * dx[0] + modes.k2[j] * dx[1] + modes.k3[j] * dx[2]));
    const double re = modes.weight[j] * std::cos(theta);
    const double im = modes.weight[j] * std::sin(theta);
    zr += re;
    zi += im;
    vr[0] += re * modes.k0[j];
    vi[0] += im * modes.k0[j];
    vr[1] += re * modes.k1[j];
    vi[1] += im * modes.k1[j];
    vr[2] += re * modes.k2[j];
    vi[2] += im * modes.k2[j];
    vr[3] += re * modes.k3[j];
    vi[3] += im * modes.k3[j];
  }
  ModeSums out;
  out.scalar = {zr, zi};
  for (int mu = 0; mu < 4; ++mu) out.vector[mu] = {vr[mu], vi[mu]};
  return out;
}

void sincos_scalar(const double* x, double* s, double* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

}  // namespace cfsgauge::simd
