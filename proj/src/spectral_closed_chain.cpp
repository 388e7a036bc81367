#include "cfsgauge/spectral_closed_chain.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cfsgauge/dirac_box.hpp"
#include "cfsgauge/error.hpp"

namespace cfsgauge::chain {

namespace {

void check_branch(Complex l) {
  const double mag = std::abs(l);
  if (mag == 0.0 || (std::abs(l.imag()) <= 1e-12 * mag && l.real() < 0.0)) {
    fail(Errc::branch_cut, "chain eigenvalue (" + std::to_string(l.real()) + "," +
                               std::to_string(l.imag()) + ") on the principal branch cut");
  }
}

Matrix4 nilpotent_part(const VectorKernel& vk) {
  const Matrix4 us = slash(vk.u);
  const Matrix4 zs = slash(vk.zeta);
  return -kI * (us * zs - zs * us);
}

template <class F, class DF>
Matrix4 chain_function(const VectorKernel& vk, const Tolerances& tol, F f, DF df) {
  const ChainEigenvalues ev = chain_eigenvalues(vk);
  const Complex s = minkowski(vk.u, vk.u) + minkowski(vk.zeta, vk.zeta);
  const Matrix4 n = nilpotent_part(vk);
  if (is_degenerate(ev, tol)) {
    return f(s) * Matrix4::Identity() + df(s) * n;
  }
  const Complex fp = f(ev.plus);
  const Complex fm = f(ev.minus);
  return 0.5 * (fp + fm) * Matrix4::Identity() + (fp - fm) / (ev.plus - ev.minus) * n;
}

}  // namespace

double minkowski(const Vec4& a, const Vec4& b) {
  return a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3);
}

Matrix4 slash(const Vec4& v) { return box::slash(v(0), v(1), v(2), v(3)); }

Matrix4 kernel_matrix(const VectorKernel& vk) { return slash(vk.u) + kI * slash(vk.zeta); }
Matrix4 kernel_adjoint(const VectorKernel& vk) { return slash(vk.u) - kI * slash(vk.zeta); }

Matrix4 chain_from_uv(const VectorKernel& vk) {
  const double s = minkowski(vk.u, vk.u) + minkowski(vk.zeta, vk.zeta);
  return s * Matrix4::Identity() + nilpotent_part(vk);
}

ChainEigenvalues chain_eigenvalues(const VectorKernel& vk) {
  const double u2 = minkowski(vk.u, vk.u);
  const double z2 = minkowski(vk.zeta, vk.zeta);
  const double uz = minkowski(vk.u, vk.zeta);
  ChainEigenvalues ev;
  ev.sqrt_disc = std::sqrt(Complex(u2 * z2 - uz * uz, 0.0));
  ev.plus = u2 + z2 + 2.0 * ev.sqrt_disc;
  ev.minus = u2 + z2 - 2.0 * ev.sqrt_disc;
  return ev;
}

bool is_degenerate(const ChainEigenvalues& ev, const Tolerances& tol) {
  return std::abs(ev.plus - ev.minus) <=
         tol.degeneracy_rel * (std::abs(ev.plus) + std::abs(ev.minus) + 1e-30);
}

Projectors spectral_projectors(const VectorKernel& vk, const Tolerances& tol) {
  const ChainEigenvalues ev = chain_eigenvalues(vk);
  if (is_degenerate(ev, tol)) {
    fail(Errc::degenerate_chain, "lambda_+ = lambda_- = (" + std::to_string(ev.plus.real()) +
                                     "," + std::to_string(ev.plus.imag()) + ")");
  }
  const Matrix4 n = nilpotent_part(vk);
  const Matrix4 id = Matrix4::Identity();
  const Complex denom = 2.0 * ev.sqrt_disc;
  return {0.5 * (id + n / denom), 0.5 * (id - n / denom)};
}

Matrix4 inv_sqrt_chain(const VectorKernel& vk, const Tolerances& tol) {
  const ChainEigenvalues ev = chain_eigenvalues(vk);
  check_branch(ev.plus);
  check_branch(ev.minus);
  return chain_function(
      vk, tol, [](Complex z) { return 1.0 / std::sqrt(z); },
      [](Complex z) { return -0.5 / (z * std::sqrt(z)); });
}

double spinor_unitarity_residual(const Matrix4& w) {
  const Matrix4& g0 = box::gamma_matrices().gram;
  return (w * g0 * w.adjoint() * g0 - Matrix4::Identity()).norm();
}

InvSqrtTimesP inv_sqrt_chain_times_P(const VectorKernel& vk, const Tolerances& tol) {
  InvSqrtTimesP out;
  const Matrix4 p = kernel_matrix(vk);
  out.spectral = inv_sqrt_chain(vk, tol) * p;
  out.unitarity_residual =
      spinor_unitarity_residual(box::gamma_matrices().gram * out.spectral);

  const ChainEigenvalues ev = chain_eigenvalues(vk);
  const double u2 = minkowski(vk.u, vk.u);
  const double z2 = minkowski(vk.zeta, vk.zeta);
  const double uz = minkowski(vk.u, vk.zeta);
  const Complex rp = std::sqrt(ev.plus);
  const Complex rm = std::sqrt(ev.minus);
  const Matrix4 us = slash(vk.u);
  const Matrix4 zs = slash(vk.zeta);

  {
    const Complex root_prod = std::sqrt(ev.plus * ev.minus);
    const Complex s = (rp + rm) / root_prod;
    const Complex t = (rp - rm) / root_prod;
    const Complex r = std::sqrt(Complex(u2 * z2 - 2.0 * uz * uz, 0.0));
    const Complex cu = 0.5 * (s - (z2 - kI * uz) / r * t);
    const Complex cz = 0.5 * kI * (s - (u2 - kI * uz) / r * t);
    out.typeset = cu * us + cz * zs;
    const double dev = (out.typeset - out.spectral).norm();
    out.typeset_deviation = std::isfinite(dev) ? dev : std::numeric_limits<double>::quiet_NaN();
  }
  {
    const Complex root_prod = rp * rm;
    const Complex s = (rp + rm) / root_prod;
    const Complex t = (rp - rm) / root_prod;
    const Complex r = ev.sqrt_disc;
    const Complex cu = 0.5 * (s - (z2 - kI * uz) / r * t);
    const Complex cz = 0.5 * kI * (s - (u2 + kI * uz) / r * t);
    out.rederived = cu * us + cz * zs;
    const double dev = (out.rederived - out.spectral).norm();
    out.rederived_deviation = std::isfinite(dev) ? dev : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

Extraction extract_vector_kernel(const Matrix4& p) {
  const auto& g = box::gamma_matrices().gamma;
  Extraction out;
  for (int nu = 0; nu < 4; ++nu) {
    const Complex v = (p * g[static_cast<std::size_t>(nu)]).trace() / 4.0;
    out.vk.u(nu) = v.real();
    out.vk.zeta(nu) = v.imag();
  }
  out.remainder = (p - kernel_matrix(out.vk)).norm();
  return out;
}

Matrix4 expansion_value(double alpha, const Vec4& u1, const Vec4& zeta1, double tau,
                        const Tolerances& tol) {
  VectorKernel vk;
  vk.u = Vec4(alpha, 0.0, 0.0, 0.0) + tau * u1;
  vk.zeta = tau * zeta1;
  return box::gamma_matrices().gram * inv_sqrt_chain(vk, tol) * kernel_matrix(vk);
}

ExpansionReport unitary_expansion(double alpha, const Vec4& u1, const Vec4& zeta1,
                                  const std::vector<double>& tau_list, const Tolerances& tol) {
  const auto& g = box::gamma_matrices().gamma;
  const Matrix4 id = Matrix4::Identity();
  ExpansionReport rep;
  rep.alpha = alpha;
  const double sgn = alpha > 0.0 ? 1.0 : -1.0;
  const double abs_alpha = std::abs(alpha);

  const Matrix4 spatial = u1(1) * g[1] + u1(2) * g[2] + u1(3) * g[3];
  rep.first_typeset = -g[0] * spatial + kI * zeta1(0) / abs_alpha * id;
  rep.first_homogeneous = (-g[0] * spatial + kI * zeta1(0) * id) / abs_alpha;

  auto value = [&](double tau) { return expansion_value(alpha, u1, zeta1, tau, tol); };
  rep.zeroth = value(0.0);
  rep.zeroth_vs_sign = (rep.zeroth - sgn * id).norm();

  // central differences with one Richardson step
  const double h = 1e-3;
  const Matrix4 d_h = (value(h) - value(-h)) / (2.0 * h);
  const Matrix4 d_h2 = (value(0.5 * h) - value(-0.5 * h)) / h;
  rep.first_fd = (4.0 * d_h2 - d_h) / 3.0;
  rep.fd_vs_typeset = (rep.first_fd - rep.first_typeset).norm();
  rep.fd_vs_homogeneous = (rep.first_fd - rep.first_homogeneous).norm();
  rep.antisymmetry = (rep.first_fd + g[0] * rep.first_fd.adjoint() * g[0]).norm();

  for (const double tau : tau_list) {
    rep.tau.push_back(tau);
    rep.residual.push_back((value(tau) - sgn * id - tau * rep.first_homogeneous).norm());
  }
  for (std::size_t i = 0; i + 1 < rep.residual.size(); ++i) {
    rep.ratios.push_back(rep.residual[i] / rep.residual[i + 1]);
  }
  return rep;
}

}  // namespace cfsgauge::chain
