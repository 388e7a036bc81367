#include "cfsgauge/manifold.hpp"

#include <cmath>
#include <string>

#include "cfsgauge/error.hpp"

namespace cfsgauge::manifold {

ChartFrame::ChartFrame(const core::CorrelationOperator& x, const Tolerances& tol)
    : base_(x, tol), tol_(tol) {
  const Eigen::Index f = base_.op.f();
  const Eigen::Index r = base_.op.rank();
  Eigen::HouseholderQR<Matrix> qr(base_.spin.basis);
  const Matrix q = qr.householderQ();
  basis_J_ = q.rightCols(f - r);
  frame_.resize(f, f);
  frame_ << base_.spin.basis, basis_J_;
}

ChartCoordinates ChartFrame::zero() const {
  return {Matrix::Zero(r(), r()), Matrix::Zero(r(), f() - r())};
}

namespace {

void check_shapes(const ChartFrame& frame, const ChartCoordinates& c) {
  if (c.A.rows() != frame.r() || c.A.cols() != frame.r() || c.B.rows() != frame.r() ||
      c.B.cols() != frame.f() - frame.r()) {
    fail(Errc::dimension_mismatch, "chart coordinates do not match the frame");
  }
}

}  // namespace

void check_chart_domain(const ChartFrame& frame, const ChartCoordinates& c) {
  check_shapes(frame, c);
  const double scale = std::max(1.0, c.A.norm());
  if (hermiticity_residual(c.A) > frame.tolerances().tol * scale) {
    fail(Errc::not_hermitian, "chart coordinate A is not Hermitian");
  }
  const RealVector base = hermitian_eigenvalues(frame.X());
  const RealVector moved = hermitian_eigenvalues(frame.X() + c.A);
  const double base_min = base.cwiseAbs().minCoeff();
  const double moved_min = moved.cwiseAbs().minCoeff();
  const Signature s = count_signs(moved, 0.0);
  if (!(moved_min > 0.5 * base_min) || s.positive != frame.p() || s.negative != frame.q()) {
    fail(Errc::signature_lost, "min |eig(X+A)| = " + std::to_string(moved_min) +
                                   ", min |eig(X)| = " + std::to_string(base_min));
  }
}

core::CorrelationOperator chart_forward(const ChartFrame& frame, const ChartCoordinates& c) {
  check_chart_domain(frame, c);
  const Eigen::Index r = frame.r();
  const Eigen::Index n = frame.f() - r;
  const Matrix xa = frame.X() + hermitian_part(c.A);
  Matrix blocks(frame.f(), frame.f());
  blocks.topLeftCorner(r, r) = xa;
  blocks.topRightCorner(r, n) = c.B;
  blocks.bottomLeftCorner(n, r) = c.B.adjoint();
  blocks.bottomRightCorner(n, n) = c.B.adjoint() * xa.partialPivLu().solve(c.B);
  return core::CorrelationOperator(hermitian_part(frame.from_blocks(blocks)), frame.p(),
                                   frame.q());
}

ChartCoordinates chart_inverse(const ChartFrame& frame, const core::CorrelationOperator& y) {
  if (y.f() != frame.f() || y.p != frame.p() || y.q != frame.q()) {
    fail(Errc::dimension_mismatch, "point does not belong to the chart's F^{p,q}");
  }
  const core::SpinSpaceData sy = core::spin_space(y, frame.tolerances());
  const Matrix u11 = frame.basis_I().adjoint() * sy.basis;
  const double smin = smallest_singular_value(u11);
  if (smin < frame.tolerances().chart_u11_min) {
    fail(Errc::too_far_from_base, "sigma_min(U11) = " + std::to_string(smin));
  }
  const Eigen::Index r = frame.r();
  const Matrix yb = frame.to_blocks(y.matrix);
  ChartCoordinates c;
  c.A = hermitian_part(yb.topLeftCorner(r, r)) - frame.X();
  c.B = yb.topRightCorner(r, frame.f() - r);
  return c;
}

int manifold_dim(int p, int q, int f) {
  if (p < 0 || q < 0 || p + q > f) {
    fail(Errc::invalid_signature, "need 0 <= p, q and p+q <= f, got (" + std::to_string(p) +
                                      "," + std::to_string(q) + "," + std::to_string(f) + ")");
  }
  const int r = p + q;
  return 2 * r * f - r * r;
}

double hs_distance(const Matrix& x, const Matrix& y) {
  const Matrix d = x - y;
  return std::sqrt(std::max(0.0, (d * d).trace().real()));
}

double riemannian_metric(const Matrix& u, const Matrix& v) { return (u * v).trace().real(); }

RealVector pack(const ChartCoordinates& c) {
  const Eigen::Index r = c.A.rows();
  const Eigen::Index n = c.B.cols();
  RealVector v(r * r + 2 * r * n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < r; ++i) v(k++) = c.A(i, i).real();
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = i + 1; j < r; ++j) {
      v(k++) = c.A(i, j).real();
      v(k++) = c.A(i, j).imag();
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < r; ++i) {
      v(k++) = c.B(i, j).real();
      v(k++) = c.B(i, j).imag();
    }
  }
  return v;
}

ChartCoordinates unpack(const RealVector& v, int r, int f) {
  const int n = f - r;
  if (v.size() != r * r + 2 * r * n) fail(Errc::dimension_mismatch, "packed coordinate length");
  ChartCoordinates c{Matrix::Zero(r, r), Matrix::Zero(r, n)};
  Eigen::Index k = 0;
  for (int i = 0; i < r; ++i) c.A(i, i) = v(k++);
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      const Complex z(v(k), v(k + 1));
      k += 2;
      c.A(i, j) = z;
      c.A(j, i) = std::conj(z);
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < r; ++i) {
      c.B(i, j) = Complex(v(k), v(k + 1));
      k += 2;
    }
  }
  return c;
}

RealVector vectorize(const Matrix& m) {
  RealVector v(2 * m.size());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      v(k++) = m(i, j).real();
      v(k++) = m(i, j).imag();
    }
  }
  return v;
}

Matrix chart_differential(const ChartFrame& frame, const ChartCoordinates& c,
                          const ChartCoordinates& d) {
  const Eigen::Index r = frame.r();
  const Eigen::Index n = frame.f() - r;
  const Matrix k = (frame.X() + c.A).partialPivLu().inverse();
  Matrix blocks(frame.f(), frame.f());
  blocks.topLeftCorner(r, r) = d.A;
  blocks.topRightCorner(r, n) = d.B;
  blocks.bottomLeftCorner(n, r) = d.B.adjoint();
  blocks.bottomRightCorner(n, n) = d.B.adjoint() * k * c.B + c.B.adjoint() * k * d.B -
                                   c.B.adjoint() * k * d.A * k * c.B;
  return frame.from_blocks(blocks);
}

namespace {

ChartCoordinates shifted(const ChartCoordinates& c, const RealVector& packed_dir, double h, int r,
                         int f) {
  const ChartCoordinates d = unpack(packed_dir, r, f);
  return {c.A + h * d.A, c.B + h * d.B};
}

}  // namespace

RealMatrix chart_jacobian(const ChartFrame& frame, const ChartCoordinates& c) {
  const int r = frame.r();
  const int f = frame.f();
  const Eigen::Index dim = manifold_dim(frame.p(), frame.q(), f);
  RealMatrix j(2 * f * f, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const ChartCoordinates d = unpack(RealVector::Unit(dim, k), r, f);
    j.col(k) = vectorize(chart_differential(frame, c, d));
  }
  return j;
}

RealMatrix chart_jacobian_fd(const ChartFrame& frame, const ChartCoordinates& c, double h) {
  const int r = frame.r();
  const int f = frame.f();
  const Eigen::Index dim = manifold_dim(frame.p(), frame.q(), f);
  RealMatrix j(2 * f * f, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const RealVector e = RealVector::Unit(dim, k);
    const Matrix plus = chart_forward(frame, shifted(c, e, h, r, f)).matrix;
    const Matrix minus = chart_forward(frame, shifted(c, e, -h, r, f)).matrix;
    j.col(k) = vectorize((plus - minus) / (2.0 * h));
  }
  return j;
}

RealMatrix realization_jacobian(const ChartFrame& frame) {
  const Matrix& psi0 = frame.base().psi;
  const Matrix& x = frame.X();
  const Eigen::Index r = psi0.rows();
  const Eigen::Index f = psi0.cols();
  RealMatrix j(2 * f * f, 2 * r * f);
  Eigen::Index k = 0;
  for (Eigen::Index col = 0; col < f; ++col) {
    for (Eigen::Index row = 0; row < r; ++row) {
      for (const Complex unit : {Complex(1.0, 0.0), kI}) {
        Matrix d = Matrix::Zero(r, f);
        d(row, col) = unit;
        j.col(k++) = vectorize(d.adjoint() * x * psi0 + psi0.adjoint() * x * d);
      }
    }
  }
  return j;
}

int numeric_rank(const RealMatrix& j, double rel_cut) {
  Eigen::JacobiSVD<RealMatrix> svd(j);
  const RealVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_cut * s(0)) ++rank;
  }
  return rank;
}

RealMatrix metric_in_chart(const ChartFrame& frame, const ChartCoordinates& c) {
  const RealMatrix j = chart_jacobian(frame, c);
  return j.transpose() * j;
}

double metric_gradient_at_origin(const ChartFrame& frame, double h) {
  const int r = frame.r();
  const int f = frame.f();
  const Eigen::Index dim = manifold_dim(frame.p(), frame.q(), f);
  const ChartCoordinates origin = frame.zero();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    const RealVector e = RealVector::Unit(dim, k);
    const RealMatrix plus = metric_in_chart(frame, shifted(origin, e, h, r, f));
    const RealMatrix minus = metric_in_chart(frame, shifted(origin, e, -h, r, f));
    worst = std::max(worst, (plus - minus).norm() / (2.0 * h));
  }
  return worst;
}

GaussianReport gaussian_check(const ChartFrame& frame, const ChartCoordinates& a,
                              const ChartCoordinates& a_tilde, const std::vector<double>& t_list) {
  auto distance_sq = [&](double t) {
    const Matrix m1 = chart_forward(frame, {t * a.A, t * a.B}).matrix;
    const Matrix m2 = chart_forward(frame, {t * a_tilde.A, t * a_tilde.B}).matrix;
    const double d = hs_distance(m1, m2);
    return d * d;
  };

  GaussianReport rep;
  rep.c2_expected = (a.A - a_tilde.A).squaredNorm() + 2.0 * (a.B - a_tilde.B).squaredNorm();
  const double h = 1e-3;
  const double g_h = distance_sq(h) / (h * h);
  const double g_h2 = distance_sq(0.5 * h) / (0.25 * h * h);
  rep.c2_fit = (4.0 * g_h2 - g_h) / 3.0;
  rep.c2_rel_error = rep.c2_expected > 0.0
                         ? std::abs(rep.c2_fit - rep.c2_expected) / rep.c2_expected
                         : std::abs(rep.c2_fit);
  for (const double t : t_list) {
    const double d = distance_sq(t);
    rep.t.push_back(t);
    rep.D.push_back(d);
    rep.residual.push_back(d - rep.c2_expected * t * t);
  }
  for (std::size_t i = 0; i + 1 < rep.residual.size(); ++i) {
    rep.ratios.push_back(rep.residual[i] / rep.residual[i + 1]);
  }
  return rep;
}

}  // namespace cfsgauge::manifold
