#pragma once

#include <array>
#include <vector>

#include "cfsgauge/cfs_core.hpp"
#include "cfsgauge/linalg.hpp"
#include "cfsgauge/simd/mode_sum.hpp"

// Dirac sea in the spatial box [-L, L]^3 with periodic boundary conditions.
//
// Momenta are k = (pi/L) n with n in Z^3, omega = sqrt(|k|^2 + m^2), and the
// Hilbert space is spanned by the negative-energy plane waves with
// omega < 1/eps, two polarizations each. Spinors use the Dirac representation
// with the spinor inner product <psi|phi> = psi^dagger gamma^0 phi.
namespace cfsgauge::box {

struct BoxConfig {
  double L = 1.0;
  double eps = 1.0;
  double m = 0.0;

  // Throws InvalidBox unless L > 0, eps > 0, m >= 0 (all finite).
  void validate() const;
};

struct SpacetimePoint {
  double t = 0.0;
  std::array<double, 3> x{0.0, 0.0, 0.0};

  // Spatial components reduced into [-L, L).
  SpacetimePoint reduced(double L) const;
};

struct MomentumMode {
  std::array<int, 3> n{0, 0, 0};
  std::array<double, 3> k{0.0, 0.0, 0.0};
  double omega = 0.0;
  int a = 1;  // polarization, 1 or 2
};

struct GammaMatrices {
  std::array<Matrix4, 4> gamma;  // gamma^0 .. gamma^3
  Matrix4 gram;                  // spinor Gram matrix, gamma^0
};

const GammaMatrices& gamma_matrices();

// k-slash = k^0 gamma^0 - sum_alpha k^alpha gamma^alpha.
Matrix4 slash(double k0, double k1, double k2, double k3);

// Lattice vectors n with omega(k) < 1/eps, ordered by (|n|^2, n1, n2, n3);
// n = 0 is dropped when m = 0.
std::vector<std::array<int, 3>> lattice_momenta(const BoxConfig& cfg);
// Two modes per lattice vector. Throws EmptyCutoff if there are none.
std::vector<MomentumMode> momentum_modes(const BoxConfig& cfg);

// (8 / (3 pi^2)) (L / eps)^3
double asymptotic_dimension(const BoxConfig& cfg);

// chi_1, chi_2 with (k-slash - m) chi = 0 for k = (-omega, kvec) and
// <chi_a|chi_b> = -delta_ab. Throws MasslessNormalization if m = 0.
std::array<Vector4, 2> chi_spinors(const MomentumMode& mode, double m);

// sqrt(m / (pi omega)) / (4 L^{3/2}) e^{-ikx} chi_a. Throws MasslessNormalization if m = 0.
Vector4 plane_wave(const BoxConfig& cfg, const MomentumMode& mode, const SpacetimePoint& x);

// Same wave with the normalization and chi combined,
//   e^{-ikx} (k-slash + m) e_{a+2} / (4 L^{3/2} sqrt(2 pi omega (omega + m))),
// which stays finite at m = 0.
Vector4 normalized_wave(const BoxConfig& cfg, const MomentumMode& mode, const SpacetimePoint& x);

// 4 x f matrix whose columns are the basis waves at x.
Matrix evaluation_matrix(const BoxConfig& cfg, const std::vector<MomentumMode>& modes,
                         const SpacetimePoint& x);

// Box scalar product of two basis waves evaluated in closed form:
// zero for different momenta, otherwise 2 pi (2L)^3 psi^dagger phi at t = 0.
Complex analytic_scalar_product(const BoxConfig& cfg, const MomentumMode& a,
                                const MomentumMode& b);

// F(x) = -E_x^dagger gamma^0 E_x for each point. Throws TooFewModes if f < 4.
std::vector<core::CorrelationOperator> build_correlation_map(
    const BoxConfig& cfg, const std::vector<MomentumMode>& modes,
    const std::vector<SpacetimePoint>& points, bool parallel = false);

// Precomputed mode table for P(x,y) = (2L)^{-3} sum_k (4 pi omega)^{-1} e^{-ik(x-y)} (k-slash + m).
class KernelSum {
 public:
  explicit KernelSum(const BoxConfig& cfg);

  Matrix4 operator()(const SpacetimePoint& x, const SpacetimePoint& y) const;
  simd::ModeSums sums(const SpacetimePoint& x, const SpacetimePoint& y) const;
  // Matrix assembled from the five phase sums.
  Matrix4 assemble(const simd::ModeSums& s) const;
  std::size_t lattice_points() const { return table_.size(); }

 private:
  double m_;
  simd::ModeArrays table_;
};

Matrix4 kernel_mode_sum(const BoxConfig& cfg, const SpacetimePoint& x, const SpacetimePoint& y);
// -E_x E_y^dagger gamma^0
Matrix4 kernel_braket(const Matrix& e_x, const Matrix& e_y);

// The real alpha with P(x,x) = alpha gamma^0, and the relative size of the
// remaining components.
struct DiagonalForm {
  double alpha = 0.0;
  double rel_residual = 0.0;
};
DiagonalForm diagonal_form(const Matrix4& p_xx);

}  // namespace cfsgauge::box
