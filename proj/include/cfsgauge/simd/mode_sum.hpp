#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

// Phase-weighted sums over momentum modes:
//
//   Z      = sum_j w_j e^{i theta_j}
//   Z_mu   = sum_j w_j e^{i theta_j} k_j^mu       (mu = 0..3)
//   theta_j = -(k_j^0 dt - kvec_j . dx)
//
// The kernel mode sum is assembled from these five complex numbers. A scalar
// reference kernel and an AVX2/FMA kernel are provided; the active one is
// chosen at runtime from CPU support, overridable with CFSGAUGE_SIMD=scalar.
namespace cfsgauge::simd {

// Structure-of-arrays mode table.
struct ModeArrays {
  std::vector<double> weight;
  std::vector<double> k0;
  std::vector<double> k1;
  std::vector<double> k2;
  std::vector<double> k3;

  std::size_t size() const { return weight.size(); }
  void push_back(double w, double a0, double a1, double a2, double a3) {
    weight.push_back(w);
    k0.push_back(a0);
    k1.push_back(a1);
    k2.push_back(a2);
    k3.push_back(a3);
  }
};

struct ModeSums {
  std::complex<double> scalar;
  std::complex<double> vector[4];
};

ModeSums mode_sum_scalar(const ModeArrays& modes, double dt, const double dx[3]);
void sincos_scalar(const double* x, double* s, double* c, std::size_t n);

#if defined(CFSGAUGE_HAVE_AVX2)
ModeSums mode_sum_avx2(const ModeArrays& modes, double dt, const double dx[3]);
// Vectorized sine/cosine, accurate to a few ulp for |x| < 1e5.
void sincos_avx2(const double* x, double* s, double* c, std::size_t n);
#endif

enum class Backend { scalar, avx2 };

bool avx2_available();
Backend active_backend();
// Forces a backend; requesting avx2 on a machine without it selects scalar.
void set_backend(Backend b);
std::string_view backend_name(Backend b);

ModeSums mode_sum(const ModeArrays& modes, double dt, const double dx[3]);

}  // namespace cfsgauge::simd
