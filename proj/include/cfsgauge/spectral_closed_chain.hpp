#pragma once

#include <vector>

#include "cfsgauge/linalg.hpp"
#include "cfsgauge/tolerances.hpp"

// Closed chains of massless kernels P = u-slash + i zeta-slash with real
// Minkowski vectors u, zeta (signature +---):
//
//   A = P P^* = u^2 + zeta^2 - i [u-slash, zeta-slash]
//   lambda_+- = u^2 + zeta^2 +- 2 sqrt(u^2 zeta^2 - (u zeta)^2)
//
// Functions of A are evaluated through N = A - (u^2 + zeta^2), which squares
// to 4 (u^2 zeta^2 - (u zeta)^2): f(A) = (f_+ + f_-)/2 + (f_+ - f_-)/(lambda_+ - lambda_-) N,
// with the derivative in place of the difference quotient when lambda_+ = lambda_-.
namespace cfsgauge::chain {

using Vec4 = Eigen::Vector4d;

double minkowski(const Vec4& a, const Vec4& b);
Matrix4 slash(const Vec4& v);

struct VectorKernel {
  Vec4 u = Vec4::Zero();
  Vec4 zeta = Vec4::Zero();
};

Matrix4 kernel_matrix(const VectorKernel& vk);  // u-slash + i zeta-slash
Matrix4 kernel_adjoint(const VectorKernel& vk);  // u-slash - i zeta-slash
Matrix4 chain_from_uv(const VectorKernel& vk);

struct ChainEigenvalues {
  Complex plus;
  Complex minus;
  Complex sqrt_disc;  // principal sqrt(u^2 zeta^2 - (u zeta)^2)
};
ChainEigenvalues chain_eigenvalues(const VectorKernel& vk);

bool is_degenerate(const ChainEigenvalues& ev, const Tolerances& tol = {});

struct Projectors {
  Matrix4 plus;
  Matrix4 minus;
};
// Throws DegenerateChain if lambda_+ = lambda_- within degeneracy_rel.
Projectors spectral_projectors(const VectorKernel& vk, const Tolerances& tol = {});

// A^{-1/2} by the spectral route. Throws BranchCut if lambda_+- lies on (-inf, 0].
Matrix4 inv_sqrt_chain(const VectorKernel& vk, const Tolerances& tol = {});

struct InvSqrtTimesP {
  Matrix4 spectral;   // A^{-1/2} P
  Matrix4 typeset;    // closed form with the displayed coefficients
  Matrix4 rederived;  // closed form re-derived from the spectral route
  double typeset_deviation = 0.0;    // ||typeset - spectral||_F (NaN if not finite)
  double rederived_deviation = 0.0;  // ||rederived - spectral||_F
  double unitarity_residual = 0.0;   // ||W W^* - 1||_F for W = gamma^0 A^{-1/2} P
};

// The typeset coefficients are
//   (1/2) (S - (zeta^2 - i(u zeta)) / R * T) for u-slash,
//   (i/2) (S - (u^2   - i(u zeta)) / R * T) for zeta-slash,
// with S = (sqrt(l+) + sqrt(l-)) / sqrt(l+ l-), T = (sqrt(l+) - sqrt(l-)) / sqrt(l+ l-)
// and R = sqrt(u^2 zeta^2 - 2 (u zeta)^2). The re-derived form uses
// R = sqrt(u^2 zeta^2 - (u zeta)^2), u^2 + i(u zeta) in the zeta-slash
// coefficient and sqrt(l+) sqrt(l-) in the denominators.
InvSqrtTimesP inv_sqrt_chain_times_P(const VectorKernel& vk, const Tolerances& tol = {});

// ||W gamma^0 W^dagger gamma^0 - 1||_F
double spinor_unitarity_residual(const Matrix4& w);

// Unique (u, zeta) with P = u-slash + i zeta-slash + remainder; v^nu = tr(P gamma^nu) / 4.
struct Extraction {
  VectorKernel vk;
  double remainder = 0.0;  // ||P - u-slash - i zeta-slash||_F
};
Extraction extract_vector_kernel(const Matrix4& p);

struct ExpansionReport {
  double alpha = 0.0;
  Matrix4 zeroth;                 // g(0)
  Matrix4 first_fd;               // first-order coefficient from finite differences
  Matrix4 first_typeset;          // -gamma^0 (u1 . gamma) + i zeta1^0 / |alpha|
  Matrix4 first_homogeneous;      // (-gamma^0 (u1 . gamma) + i zeta1^0) / |alpha|
  double fd_vs_typeset = 0.0;
  double fd_vs_homogeneous = 0.0;
  double zeroth_vs_sign = 0.0;    // ||g(0) - sign(alpha)||
  double antisymmetry = 0.0;      // ||C + C^*|| of the fitted coefficient
  std::vector<double> tau;
  std::vector<double> residual;   // ||g(tau) - sign(alpha) - tau C_homogeneous||
  std::vector<double> ratios;
};

// g(tau) = gamma^0 A^{-1/2} P for u = (alpha, 0, 0, 0) + tau u1, zeta = tau zeta1.
Matrix4 expansion_value(double alpha, const Vec4& u1, const Vec4& zeta1, double tau,
                        const Tolerances& tol = {});
ExpansionReport unitary_expansion(double alpha, const Vec4& u1, const Vec4& zeta1,
                                  const std::vector<double>& tau_list, const Tolerances& tol = {});

}  // namespace cfsgauge::chain
