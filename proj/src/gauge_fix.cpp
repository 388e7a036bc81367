#include "cfsgauge/gauge_fix.hpp"

#include <cmath>
#include <string>

#include "cfsgauge/error.hpp"
#include "cfsgauge/parallel.hpp"

namespace cfsgauge::gauge {

Matrix ambient(const manifold::ChartFrame& frame, const WaveChartPoint& w) {
  return w.psi_I * frame.basis_I().adjoint() + w.psi_J * frame.basis_J().adjoint();
}

WaveChartPoint split(const manifold::ChartFrame& frame, const Matrix& psi) {
  return {psi * frame.basis_I(), psi * frame.basis_J()};
}

WaveChartPoint base_wave(const manifold::ChartFrame& frame) {
  return {Matrix::Identity(frame.r(), frame.r()), Matrix::Zero(frame.r(), frame.f() - frame.r())};
}

core::CorrelationOperator realize(const manifold::ChartFrame& frame, const WaveChartPoint& w) {
  const Matrix psi = ambient(frame, w);
  return core::CorrelationOperator(hermitian_part(psi.adjoint() * frame.X() * psi), frame.p(),
                                   frame.q());
}

Matrix realize_map(const Matrix& psi, const Matrix& target_gram) {
  return hermitian_part(-(psi.adjoint() * target_gram * psi));
}

std::optional<Matrix> gauge_orbit_witness(const manifold::ChartFrame& frame,
                                          const WaveChartPoint& w,
                                          const WaveChartPoint& w_tilde) {
  const Tolerances& tol = frame.tolerances();
  const double smin = smallest_singular_value(w.psi_I);
  if (!(smin > tol.singular_rel * std::max(1.0, operator_norm(w.psi_I)))) {
    fail(Errc::not_invertible, "psi_I is singular");
  }
  const Matrix y = realize(frame, w).matrix;
  const Matrix y_tilde = realize(frame, w_tilde).matrix;
  if ((y - y_tilde).norm() > tol.tol_sqrt * std::max(1.0, y.norm())) return std::nullopt;

  const Matrix u = w_tilde.psi_I * w.psi_I.partialPivLu().inverse();
  const krein::KreinSpace space = frame.base().spin.krein_space(tol);
  if (space.unitarity_residual(u) > tol.tol_sqrt * std::max(1.0, space.gram().norm())) {
    return std::nullopt;
  }
  if ((w_tilde.psi_J - u * w.psi_J).norm() > tol.tol_sqrt * std::max(1.0, w.psi_J.norm())) {
    return std::nullopt;
  }
  return u;
}

WaveChartPoint symmetrize(const manifold::ChartFrame& frame, const WaveChartPoint& w) {
  const krein::KreinSpace space = frame.base().spin.krein_space(frame.tolerances());
  const krein::PolarDecomposition polar = krein::polar_decompose(space, w.psi_I, frame.tolerances());
  return {polar.symmetric, space.adjoint(polar.unitary) * w.psi_J};
}

SymmetricChartValue symmetric_wave_chart(const manifold::ChartFrame& frame,
                                         const core::RegularPoint& y) {
  const core::RegularPoint& x = frame.base();
  if (y.op.f() != x.op.f() || y.op.p != x.op.p || y.op.q != x.op.q) {
    fail(Errc::dimension_mismatch, "point does not belong to the chart's F^{p,q}");
  }
  try {
    const krein::KreinSpace space = x.spin.krein_space(frame.tolerances());
    const Matrix p_xy = core::kernel(x, y);
    const Matrix a_xy = p_xy * core::kernel(y, x);
    const Matrix x_inv = x.X().partialPivLu().inverse();
    const Matrix b = x_inv * a_xy * x_inv;
    const krein::SquareRoot root = krein::sqrt_near_identity(space, b, frame.tolerances());
    SymmetricChartValue out;
    out.connecting = root.inv_half * x_inv * p_xy;
    out.psi = out.connecting * y.psi;
    out.point = split(frame, out.psi);
    out.series_only = root.series_only;
    return out;
  } catch (const Error& e) {
    switch (e.code()) {
      case Errc::branch_cut:
      case Errc::out_of_convergence_radius:
      case Errc::not_symmetric:
      case Errc::not_invertible:
      case Errc::singular_gram:
        fail(Errc::out_of_chart_domain, e.what());
      default:
        throw;
    }
  }
}

double connecting_unitarity_residual(const manifold::ChartFrame& frame,
                                     const core::RegularPoint& y, const Matrix& connecting) {
  return (connecting.adjoint() * frame.base().spin.spin_gram * connecting - y.spin.spin_gram)
      .norm();
}

WaveChartPoint gaussian_wave_map(const manifold::ChartFrame& frame,
                                 const manifold::ChartCoordinates& c) {
  const krein::KreinSpace space = frame.base().spin.krein_space(frame.tolerances());
  const Matrix x_inv = frame.X().partialPivLu().inverse();
  const Matrix k = Matrix::Identity(frame.r(), frame.r()) + x_inv * c.A;
  const krein::SquareRoot root = krein::sqrt_near_identity(space, k, frame.tolerances());
  return {root.half, root.inv_half * x_inv * c.B};
}

CoincidenceReport charts_coincide_check(const manifold::ChartFrame& frame,
                                        const std::vector<core::CorrelationOperator>& samples) {
  CoincidenceReport rep;
  const Matrix x_inv = frame.X().partialPivLu().inverse();
  for (const auto& y : samples) {
    try {
      const manifold::ChartCoordinates c = manifold::chart_inverse(frame, y);
      if (operator_norm(x_inv * c.A) > frame.tolerances().radius_series) {
        fail(Errc::out_of_chart_domain, "||X^{-1} A|| beyond the series radius");
      }
      const SymmetricChartValue sym =
          symmetric_wave_chart(frame, core::RegularPoint(y, frame.tolerances()));
      const WaveChartPoint gauss = gaussian_wave_map(frame, c);
      const double dev = (sym.psi - ambient(frame, gauss)).norm();
      rep.max_deviation = std::max(rep.max_deviation, dev);
      ++rep.evaluated;
    } catch (const Error&) {
      ++rep.domain_failures;
    }
  }
  return rep;
}

GaugeMap build_gauge(const manifold::ChartFrame& frame,
                     const std::vector<core::CorrelationOperator>& omega, const Matrix& u_x,
                     const Matrix& target_gram, bool parallel) {
  const Tolerances& tol = frame.tolerances();
  if (u_x.cols() != frame.r() || u_x.rows() != target_gram.rows() ||
      target_gram.rows() != target_gram.cols()) {
    fail(Errc::dimension_mismatch, "U_x must map S_x into V");
  }
  const Matrix& g_x = frame.base().spin.spin_gram;
  const double unitarity = (u_x.adjoint() * target_gram * u_x - g_x).norm();
  if (unitarity > tol.tol_sqrt * std::max(1.0, g_x.norm())) {
    fail(Errc::not_unitary, "U_x is not a Krein isometry, residual " + std::to_string(unitarity));
  }

  GaugeMap out;
  out.target_gram = target_gram;
  out.u_x = u_x;
  out.values.resize(omega.size());
  out.residuals.resize(omega.size());
  parallel_for(
      omega.size(),
      [&](std::size_t i) {
        const core::RegularPoint y(omega[i], tol);
        const SymmetricChartValue phi = symmetric_wave_chart(frame, y);
        out.values[i] = u_x * phi.psi;
        out.residuals[i] = (omega[i].matrix - realize_map(out.values[i], target_gram)).norm();
      },
      parallel);
  return out;
}

CanonicalTarget canonical_target(const Matrix& X) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(X));
  const RealVector& lambda = es.eigenvalues();
  const Eigen::Index n = lambda.size();
  CanonicalTarget out;
  out.gram = Matrix::Zero(n, n);
  RealVector scale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.gram(i, i) = lambda(i) > 0.0 ? -1.0 : 1.0;
    scale(i) = std::sqrt(std::abs(lambda(i)));
  }
  out.u_x = scale.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  return out;
}

}  // namespace cfsgauge::gauge
