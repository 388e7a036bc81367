#include "cfsgauge/perturbation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cfsgauge/error.hpp"
#include "cfsgauge/krein.hpp"

namespace cfsgauge::perturb {

namespace {

const Matrix4& g0() { return box::gamma_matrices().gram; }

const krein::KreinSpace& spinor_space() {
  static const krein::KreinSpace space(Matrix(box::gamma_matrices().gram), 2, 2);
  return space;
}

Matrix4 kernel_of(const Matrix& e_x, const Matrix& e_y) { return box::kernel_braket(e_x, e_y); }

}  // namespace

GaugeFunction::GaugeFunction(double L, std::vector<FourierTerm> terms, double offset)
    : L_(L), terms_(std::move(terms)), offset_(offset) {}

GaugeFunction GaugeFunction::random(Random& rng, double L, int terms, double amplitude, int max_n) {
  std::vector<FourierTerm> out;
  for (int j = 0; j < terms; ++j) {
    FourierTerm t;
    t.c = amplitude * rng.normal();
    for (int& n : t.n) n = rng.uniform_int(-max_n, max_n);
    t.omega = rng.uniform(0.0, 2.0);
    t.phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    out.push_back(t);
  }
  return GaugeFunction(L, std::move(out));
}

double GaugeFunction::operator()(const box::SpacetimePoint& x) const {
  const double scale = std::numbers::pi / L_;
  double value = offset_;
  for (const auto& t : terms_) {
    const double qx = scale * (t.n[0] * x.x[0] + t.n[1] * x.x[1] + t.n[2] * x.x[2]);
    value += t.c * std::cos(qx - t.omega * x.t + t.phi);
  }
  return value;
}

GaugeFunction GaugeFunction::scaled(double s) const {
  std::vector<FourierTerm> terms = terms_;
  for (auto& t : terms) t.c *= s;
  return GaugeFunction(L_, std::move(terms), s * offset_);
}

Matrix apply_local_phase(const Matrix& e_x, double lambda) {
  return Complex(std::cos(lambda), std::sin(lambda)) * e_x;
}

core::CorrelationOperator perturbed_correlation(const Matrix& e_tilde_x) {
  return core::CorrelationOperator(core::local_correlation(e_tilde_x, Matrix(g0())), 2);
}

Matrix4 mixed_kernel(const Matrix& e_x, const Matrix& e_tilde_x) { return kernel_of(e_x, e_tilde_x); }

double diagonal_coefficient(const Matrix4& p_xx, const Tolerances& tol) {
  const box::DiagonalForm d = box::diagonal_form(p_xx);
  if (!(d.rel_residual <= tol.massless_form_rel)) {
    fail(Errc::not_diagonal_kernel,
         "P(x,x) deviates from alpha gamma^0 by " + std::to_string(d.rel_residual) + " |alpha|");
  }
  return d.alpha;
}

ScaledRoot scaled_chain_root(const Matrix4& a, double alpha, const Tolerances& tol) {
  const double a2 = alpha * alpha;
  const krein::SquareRoot root = krein::sqrt_near_identity(spinor_space(), Matrix(a / a2), tol);
  return {std::abs(alpha) * Matrix4(root.half), Matrix4(root.inv_half) / std::abs(alpha)};
}

Matrix perturbed_symmetric_gauge(const Matrix& e_x, const Matrix& e_tilde_x, const Matrix4& u_x,
                                 const Tolerances& tol) {
  const double alpha = diagonal_coefficient(kernel_of(e_x, e_x), tol);
  const Matrix4 p = mixed_kernel(e_x, e_tilde_x);
  const Matrix4 a = p * kernel_of(e_tilde_x, e_x);
  const ScaledRoot root = scaled_chain_root(a, alpha, tol);
  return u_x * g0() * root.inv_half * p * e_tilde_x;
}

Matrix symmetric_wave_gauge(const Matrix& e_x, const Matrix& e_y, const Matrix4& u_x,
                            const Tolerances& tol) {
  const Matrix4 p = kernel_of(e_x, e_y);
  const Matrix4 a = p * kernel_of(e_y, e_x);
  const krein::SquareRoot root = krein::principal_sqrt(Matrix(a), tol);
  return u_x * g0() * root.inv_half * p * e_y;
}

BasisWaves basis_waves(const box::BoxConfig& cfg, const std::vector<box::MomentumMode>& modes,
                       const box::SpacetimePoint& x,
                       const std::vector<box::SpacetimePoint>& samples, const Tolerances& tol) {
  const box::KernelSum kernel(cfg);
  BasisWaves out;
  out.alpha = diagonal_coefficient(kernel(x, x), tol);
  const Matrix e_x = box::evaluation_matrix(cfg, modes, x);
  const core::CorrelationOperator f_x(core::local_correlation(e_x, Matrix(g0())), 2);
  out.u = core::spin_space(f_x, tol).basis;
  out.chi = g0() * e_x * out.u / out.alpha;
  out.orthonormality_residual =
      (out.u.adjoint() * out.u - Matrix::Identity(out.u.cols(), out.u.cols())).norm();
  for (const auto& y : samples) {
    const Matrix e_y = box::evaluation_matrix(cfg, modes, y);
    const double r = (e_y * out.u - kernel(y, x) * out.chi).norm();
    out.reconstruction_residual = std::max(out.reconstruction_residual, r);
  }
  return out;
}

Matrix4 gauged_basis(const Matrix& e_x, const Matrix& e_tilde_x, const Matrix4& u_x,
                     const Matrix4& chi, const Tolerances& tol) {
  const double alpha = diagonal_coefficient(kernel_of(e_x, e_x), tol);
  const Matrix4 a = mixed_kernel(e_x, e_tilde_x) * kernel_of(e_tilde_x, e_x);
  const ScaledRoot root = scaled_chain_root(a, alpha, tol);
  return u_x * g0() * root.half * chi;
}

TransformationLedger transformation_ledger(const box::BoxConfig& cfg,
                                           const std::vector<box::MomentumMode>& modes,
                                           const GaugeFunction& lambda,
                                           const box::SpacetimePoint& x,
                                           const std::vector<box::SpacetimePoint>& ys,
                                           const Matrix4& u_x, const Tolerances& tol) {
  TransformationLedger out;
  const double lx = lambda(x);
  const Matrix e_x = box::evaluation_matrix(cfg, modes, x);
  const Matrix et_x = apply_local_phase(e_x, lx);
  const Matrix4 ut_x = Complex(std::cos(lx), -std::sin(lx)) * u_x;
  for (const auto& y : ys) {
    const double ly = lambda(y);
    const Matrix e_y = box::evaluation_matrix(cfg, modes, y);
    const Matrix et_y = apply_local_phase(e_y, ly);

    const Matrix4 p = kernel_of(e_x, e_y);
    const Matrix4 pt = kernel_of(et_x, et_y);
    const Complex ph(std::cos(lx - ly), std::sin(lx - ly));
    out.kernel_phase = std::max(out.kernel_phase, (pt - ph * p).norm());

    const Matrix4 a = p * kernel_of(e_y, e_x);
    const Matrix4 at = pt * kernel_of(et_y, et_x);
    out.chain_invariance = std::max(out.chain_invariance, (at - a).norm());

    const Matrix g = symmetric_wave_gauge(e_x, e_y, u_x, tol);
    const Matrix gt = symmetric_wave_gauge(et_x, et_y, ut_x, tol);
    out.gauge_invariance = std::max(out.gauge_invariance, (gt - g).norm());
  }
  return out;
}

}  // namespace cfsgauge::perturb
