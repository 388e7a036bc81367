#pragma once

#include <array>
#include <vector>

#include "cfsgauge/cfs_core.hpp"
#include "cfsgauge/dirac_box.hpp"
#include "cfsgauge/random.hpp"
#include "cfsgauge/tolerances.hpp"

// Pure-gauge perturbations of box Dirac systems.
//
// A gauge function Lambda acts on the wave evaluation by the local phase
// E_x -> e^{i Lambda(x)} E_x. Everything here works in spinor coordinates: the
// spin space S_x is identified with the spinor space through the evaluation
// map, and U_x : S_x -> V is written as a 4 x 4 matrix with respect to the
// unperturbed identification. Under the perturbation that identification
// picks up e^{i Lambda(x)}, so the same abstract U_x reads U_x e^{-i Lambda(x)}.
namespace cfsgauge::perturb {

struct FourierTerm {
  double c = 0.0;
  std::array<int, 3> n{0, 0, 0};  // spatial frequency (pi / L) n
  double omega = 0.0;
  double phi = 0.0;
};

// Lambda(t, x) = offset + sum_j c_j cos(q_j . x - omega_j t + phi_j), q_j = (pi / L) n_j.
class GaugeFunction {
 public:
  GaugeFunction(double L, std::vector<FourierTerm> terms, double offset = 0.0);

  static GaugeFunction zero(double L) { return GaugeFunction(L, {}); }
  static GaugeFunction constant(double L, double theta) { return GaugeFunction(L, {}, theta); }
  // `terms` terms with c_j ~ amplitude N(0,1), n_j uniform in [-max_n, max_n]^3,
  // omega_j ~ U(0, 2), phi_j ~ U(0, 2 pi).
  static GaugeFunction random(Random& rng, double L, int terms, double amplitude, int max_n = 2);

  double operator()(const box::SpacetimePoint& x) const;
  GaugeFunction scaled(double s) const;
  const std::vector<FourierTerm>& terms() const { return terms_; }

 private:
  double L_;
  std::vector<FourierTerm> terms_;
  double offset_;
};

// e^{i lambda} E
Matrix apply_local_phase(const Matrix& e_x, double lambda);

// F~(x) = -E~^dagger gamma^0 E~
core::CorrelationOperator perturbed_correlation(const Matrix& e_tilde_x);

// P(x, F~(x)) = -E_x E~_x^dagger gamma^0
Matrix4 mixed_kernel(const Matrix& e_x, const Matrix& e_tilde_x);

// alpha with P(x,x) = alpha gamma^0; NotDiagonalKernel if the other components
// exceed massless_form_rel |alpha|.
double diagonal_coefficient(const Matrix4& p_xx, const Tolerances& tol = {});

// A^{+-1/2} for A close to alpha^2, through sqrt_near_identity of A / alpha^2
// in the spinor Krein space.
struct ScaledRoot {
  Matrix4 half;
  Matrix4 inv_half;
};
ScaledRoot scaled_chain_root(const Matrix4& a, double alpha, const Tolerances& tol = {});

// U_x gamma^0 A_{x,F~(x)}^{-1/2} P(x, F~(x)) E~_x
Matrix perturbed_symmetric_gauge(const Matrix& e_x, const Matrix& e_tilde_x, const Matrix4& u_x,
                                 const Tolerances& tol = {});

// U_x gamma^0 A_xy^{-1/2} P(x,y) E_y with P(x,y) = -E_x E_y^dagger gamma^0; the
// square root is taken by diagonalization of A_xy.
Matrix symmetric_wave_gauge(const Matrix& e_x, const Matrix& e_y, const Matrix4& u_x,
                            const Tolerances& tol = {});

struct BasisWaves {
  Matrix u;    // f x 4, orthonormal basis of S_x in H
  Matrix4 chi;  // columns chi_a = gamma^0 u_a(x) / alpha
  double alpha = 0.0;
  double reconstruction_residual = 0.0;  // max_y ||E_y u - P(y,x) chi||
  double orthonormality_residual = 0.0;  // ||u^dagger u - 1||
};

BasisWaves basis_waves(const box::BoxConfig& cfg, const std::vector<box::MomentumMode>& modes,
                       const box::SpacetimePoint& x,
                       const std::vector<box::SpacetimePoint>& samples,
                       const Tolerances& tol = {});

// Columns U_x gamma^0 A_{x,F~(x)}^{1/2} chi_a.
Matrix4 gauged_basis(const Matrix& e_x, const Matrix& e_tilde_x, const Matrix4& u_x,
                     const Matrix4& chi, const Tolerances& tol = {});

struct TransformationLedger {
  double kernel_phase = 0.0;      // max ||P~(x,y) - e^{i Lambda(x) - i Lambda(y)} P(x,y)||
  double chain_invariance = 0.0;  // max ||A~_xy - A_xy||
  double gauge_invariance = 0.0;  // max ||Psi~_V(y) - Psi_V(y)||
};

TransformationLedger transformation_ledger(const box::BoxConfig& cfg,
                                           const std::vector<box::MomentumMode>& modes,
                                           const GaugeFunction& lambda,
                                           const box::SpacetimePoint& x,
                                           const std::vector<box::SpacetimePoint>& ys,
                                           const Matrix4& u_x, const Tolerances& tol = {});

}  // namespace cfsgauge::perturb
