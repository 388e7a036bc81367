#pragma once

#include <vector>

#include "cfsgauge/cfs_core.hpp"
#include "cfsgauge/linalg.hpp"
#include "cfsgauge/tolerances.hpp"

// Charts on the manifold F^{p,q} of Hermitian rank-(p+q) operators with
// signature (p, q), and the Hilbert-Schmidt geometry on it.
//
// Around a base point x, H splits as I (+) J with I = x(H). A point near x is
//
//   Lambda(A, B) = Q [[X + A, B], [B^dagger, B^dagger (X + A)^{-1} B]] Q^dagger
//
// with Q = [basis_I | basis_J], A Hermitian on I and B : J -> I.
namespace cfsgauge::manifold {

struct ChartCoordinates {
  Matrix A;  // r x r Hermitian, r = p+q
  Matrix B;  // r x (f-r)
};

class ChartFrame {
 public:
  explicit ChartFrame(const core::CorrelationOperator& x, const Tolerances& tol = {});

  const core::RegularPoint& base() const { return base_; }
  const Matrix& X() const { return base_.spin.X; }
  const Matrix& basis_I() const { return base_.spin.basis; }
  const Matrix& basis_J() const { return basis_J_; }
  // [basis_I | basis_J], unitary f x f
  const Matrix& frame() const { return frame_; }
  int f() const { return base_.op.f(); }
  int r() const { return base_.op.rank(); }
  int p() const { return base_.op.p; }
  int q() const { return base_.op.q; }
  const Tolerances& tolerances() const { return tol_; }

  Matrix to_blocks(const Matrix& ambient) const { return frame_.adjoint() * ambient * frame_; }
  Matrix from_blocks(const Matrix& blocks) const { return frame_ * blocks * frame_.adjoint(); }

  ChartCoordinates zero() const;

 private:
  core::RegularPoint base_;
  Matrix basis_J_;
  Matrix frame_;
  Tolerances tol_;
};

// Throws SignatureLost unless min |eig(X+A)| > min |eig(X)| / 2 and X+A keeps
// the signature (p, q).
void check_chart_domain(const ChartFrame& frame, const ChartCoordinates& c);

core::CorrelationOperator chart_forward(const ChartFrame& frame, const ChartCoordinates& c);

// Reads (A, B) off the I-row blocks of y. Throws TooFarFromBase when the
// projection of S_y onto I has smallest singular value below chart_u11_min.
ChartCoordinates chart_inverse(const ChartFrame& frame, const core::CorrelationOperator& y);

// 2 (p+q) f - (p+q)^2; InvalidSignature if p, q < 0 or p+q > f.
int manifold_dim(int p, int q, int f);

double hs_distance(const Matrix& x, const Matrix& y);
double riemannian_metric(const Matrix& u, const Matrix& v);

// Real coordinates: diag(A), then (Re, Im) of the strict upper triangle of A
// row by row, then (Re, Im) of B column-major. Length 2 r f - r^2.
RealVector pack(const ChartCoordinates& c);
ChartCoordinates unpack(const RealVector& v, int r, int f);
// (Re, Im) of every entry, column-major. tr(uv) of Hermitian u, v is the dot
// product of their vectorizations.
RealVector vectorize(const Matrix& m);

// Derivative of chart_forward at c along the packed direction.
Matrix chart_differential(const ChartFrame& frame, const ChartCoordinates& c,
                          const ChartCoordinates& direction);
// Columns: vectorize(d Lambda / d coordinate_k).
RealMatrix chart_jacobian(const ChartFrame& frame, const ChartCoordinates& c);
RealMatrix chart_jacobian_fd(const ChartFrame& frame, const ChartCoordinates& c, double h = 1e-6);
// Derivative of psi -> psi^dagger X psi (realization of wave coordinates) at
// psi = Psi(x), over all 2 r f real directions of psi.
RealMatrix realization_jacobian(const ChartFrame& frame);

int numeric_rank(const RealMatrix& j, double rel_cut);

// g_kl = h(d_k Lambda, d_l Lambda)
RealMatrix metric_in_chart(const ChartFrame& frame, const ChartCoordinates& c);
// max_{k} ||g(h e_k) - g(-h e_k)|| / (2h), central differences at the origin.
double metric_gradient_at_origin(const ChartFrame& frame, double h);

struct GaussianReport {
  std::vector<double> t;
  std::vector<double> D;
  std::vector<double> residual;  // D(t) - c2_expected t^2
  std::vector<double> ratios;    // residual(t) / residual(t/2)
  double c2_fit = 0.0;
  double c2_expected = 0.0;
  double c2_rel_error = 0.0;
};

// D(t) = d(Lambda(tA, tB), Lambda(tA~, tB~))^2. c2 is fitted by Richardson
// extrapolation of D(h)/h^2 at h = 1e-3, 5e-4; `t_list` should halve from
// entry to entry for the ratio test.
GaussianReport gaussian_check(const ChartFrame& frame, const ChartCoordinates& a,
                              const ChartCoordinates& a_tilde, const std::vector<double>& t_list);

}  // namespace cfsgauge::manifold
