#include "cfsgauge/cfs_core.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "cfsgauge/error.hpp"

namespace cfsgauge::core {

krein::KreinSpace SpinSpaceData::krein_space(const Tolerances& tol) const {
  return krein::KreinSpace(spin_gram, q, p, tol);
}

Signature correlation_signature(const Matrix& x, const Tolerances& tol) {
  const RealVector lambda = hermitian_eigenvalues(x);
  const double scale = lambda.size() ? lambda.cwiseAbs().maxCoeff() : 0.0;
  return count_signs(lambda, tol.rank_rel * scale);
}

bool is_regular(const CorrelationOperator& x, const Tolerances& tol) {
  if (hermiticity_residual(x.matrix) > tol.tol * std::max(1.0, x.matrix.norm())) return false;
  const Signature s = correlation_signature(x.matrix, tol);
  return s.positive == x.p && s.negative == x.q;
}

SpinSpaceData spin_space(const CorrelationOperator& x, const Tolerances& tol) {
  if (x.matrix.rows() != x.matrix.cols()) fail(Errc::dimension_mismatch, "x not square");
  if (hermiticity_residual(x.matrix) > tol.tol * std::max(1.0, x.matrix.norm())) {
    fail(Errc::not_hermitian, "correlation operator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(x.matrix));
  const RealVector& lambda = es.eigenvalues();
  const double scale = lambda.size() ? lambda.cwiseAbs().maxCoeff() : 0.0;
  const double cut = tol.rank_rel * scale;

  std::vector<Eigen::Index> keep;
  int pos = 0;
  int neg = 0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > cut) {
      ++pos;
      keep.push_back(i);
    } else if (lambda(i) < -cut) {
      ++neg;
      keep.push_back(i);
    }
  }
  if (pos != x.p || neg != x.q) {
    fail(Errc::not_regular, "eigenvalue signs (" + std::to_string(pos) + "," +
                                std::to_string(neg) + "), expected (" + std::to_string(x.p) +
                                "," + std::to_string(x.q) + ")");
  }
  std::sort(keep.begin(), keep.end(),
            [&](Eigen::Index a, Eigen::Index b) { return lambda(a) > lambda(b); });

  SpinSpaceData out;
  out.p = x.p;
  out.q = x.q;
  const Eigen::Index r = static_cast<Eigen::Index>(keep.size());
  out.basis.resize(x.matrix.rows(), r);
  for (Eigen::Index j = 0; j < r; ++j) {
    Vector v = es.eigenvectors().col(keep[static_cast<std::size_t>(j)]);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    v *= std::conj(v(imax)) / std::abs(v(imax));
    out.basis.col(j) = v;
  }
  out.X = hermitian_part(out.basis.adjoint() * x.matrix * out.basis);
  out.spin_gram = -out.X;
  return out;
}

Matrix wave_evaluation(const SpinSpaceData& spin) { return spin.basis.adjoint(); }

Matrix local_correlation(const Matrix& wave_values, const Matrix& spinor_gram) {
  if (spinor_gram.rows() != wave_values.rows()) {
    fail(Errc::dimension_mismatch, "spinor Gram does not match wave values");
  }
  return hermitian_part(-(wave_values.adjoint() * spinor_gram * wave_values));
}

RegularPoint::RegularPoint(CorrelationOperator x, const Tolerances& tol)
    : op(std::move(x)), spin(spin_space(op, tol)), psi(wave_evaluation(spin)) {}

Matrix kernel(const RegularPoint& x, const RegularPoint& y) {
  if (x.op.f() != y.op.f()) fail(Errc::dimension_mismatch, "points live in different H");
  return x.psi * y.op.matrix * y.spin.basis;
}

Matrix kernel_braket(const RegularPoint& x, const RegularPoint& y) {
  if (x.op.f() != y.op.f()) fail(Errc::dimension_mismatch, "points live in different H");
  return -(x.psi * (y.psi.adjoint() * y.spin.spin_gram));
}

Matrix closed_chain(const RegularPoint& x, const RegularPoint& y) {
  return kernel(x, y) * kernel(y, x);
}

Matrix kernel_adjoint(const Matrix& k, const SpinSpaceData& x, const SpinSpaceData& y) {
  return y.spin_gram.partialPivLu().solve(k.adjoint() * x.spin_gram);
}

double reconstruction_residual(const RegularPoint& x) {
  return (x.op.matrix - x.psi.adjoint() * x.spin.X * x.psi).norm();
}

}  // namespace cfsgauge::core
