#include "cfsgauge/krein.hpp"

#include <cmath>
#include <string>

#include "cfsgauge/error.hpp"

namespace cfsgauge::krein {

namespace {

Matrix checked_inverse(const Matrix& gram, double singular_rel) {
  if (gram.rows() != gram.cols() || gram.rows() == 0) {
    fail(Errc::dimension_mismatch, "Gram matrix must be square and non-empty");
  }
  const double scale = operator_norm(gram);
  const double smin = smallest_singular_value(gram);
  if (!(smin > singular_rel * scale)) {
    fail(Errc::singular_gram, "smallest singular value " + std::to_string(smin) +
                                  " below " + std::to_string(singular_rel) + " * ||gram||");
  }
  return gram.partialPivLu().inverse();
}

}  // namespace

KreinSpace::KreinSpace(Matrix gram, const Tolerances& tol) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) fail(Errc::dimension_mismatch, "Gram matrix not square");
  const double scale = std::max(1.0, gram_.norm());
  if (hermiticity_residual(gram_) > tol.tol * scale) {
    fail(Errc::not_hermitian, "Gram matrix is not Hermitian");
  }
  gram_ = hermitian_part(gram_);
  gram_inv_ = checked_inverse(gram_, tol.singular_rel);
  const Signature s = signature_of(gram_, 0.0);
  p_ = s.positive;
  q_ = s.negative;
}

KreinSpace::KreinSpace(Matrix gram, int p, int q, const Tolerances& tol)
    : KreinSpace(std::move(gram), tol) {
  if (p_ != p || q_ != q) {
    fail(Errc::signature_mismatch, "declared (" + std::to_string(p) + "," + std::to_string(q) +
                                       "), found (" + std::to_string(p_) + "," +
                                       std::to_string(q_) + ")");
  }
}

KreinSpace KreinSpace::standard(int p, int q) {
  RealVector d(p + q);
  d.head(p).setOnes();
  d.tail(q).setConstant(-1.0);
  return KreinSpace(Matrix(d.cast<Complex>().asDiagonal()), p, q);
}

void KreinSpace::check_dimensions(const Matrix& a) const {
  if (a.rows() != dim() || a.cols() != dim()) {
    fail(Errc::dimension_mismatch, "operator is " + std::to_string(a.rows()) + "x" +
                                       std::to_string(a.cols()) + ", space has dim " +
                                       std::to_string(dim()));
  }
}

Matrix KreinSpace::adjoint(const Matrix& a) const {
  check_dimensions(a);
  return gram_inv_ * a.adjoint() * gram_;
}

double KreinSpace::unitarity_residual(const Matrix& u) const {
  check_dimensions(u);
  return (u.adjoint() * gram_ * u - gram_).norm();
}

double KreinSpace::symmetry_residual(const Matrix& s) const {
  return (s - adjoint(s)).norm();
}

SquareRoot principal_sqrt(const Matrix& b, const Tolerances& tol) {
  Eigen::ComplexEigenSolver<Matrix> es(b);
  if (es.info() != Eigen::Success) fail(Errc::not_invertible, "eigensolver did not converge");
  const Vector& lambda = es.eigenvalues();
  const Matrix& v = es.eigenvectors();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const Complex l = lambda(i);
    const double mag = std::abs(l);
    if (mag == 0.0 || (std::abs(l.imag()) <= 1e-12 * mag && l.real() < 0.0)) {
      fail(Errc::branch_cut, "eigenvalue (" + std::to_string(l.real()) + "," +
                                 std::to_string(l.imag()) + ") on the principal branch cut");
    }
  }
  if (condition_number(v) > tol.eigvec_condition_max) {
    // clustered spectrum: expand around the mean eigenvalue instead
    const Complex mean = b.trace() / static_cast<double>(b.rows());
    const Matrix id = Matrix::Identity(b.rows(), b.cols());
    if (mean.real() > 0.0 && operator_norm(b / mean - id) < tol.radius_series) {
      SquareRoot out = sqrt_series(b / mean);
      const Complex r = std::sqrt(mean);
      out.half *= r;
      out.inv_half /= r;
      return out;
    }
    fail(Errc::not_invertible, "eigenbasis numerically defective");
  }
  const Matrix v_inv = v.partialPivLu().inverse();
  Vector root(lambda.size());
  Vector inv_root(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    root(i) = std::sqrt(lambda(i));
    inv_root(i) = 1.0 / root(i);
  }
  SquareRoot out;
  out.half = v * root.asDiagonal() * v_inv;
  out.inv_half = v * inv_root.asDiagonal() * v_inv;
  return out;
}

double sqrt_series_coefficient(int n) {
  // binom(1/2, n) via c_{k+1} = c_k (1/2 - k) / (k + 1)
  double c = 1.0;
  for (int k = 0; k < n; ++k) c *= (0.5 - k) / (k + 1);
  return c;
}

double inv_sqrt_series_coefficient(int n) {
  double c = 1.0;
  for (int k = 0; k < n; ++k) c *= (-0.5 - k) / (k + 1);
  return c;
}

SquareRoot sqrt_series(const Matrix& b, int max_terms, double term_cutoff) {
  const Eigen::Index n = b.rows();
  const Matrix delta = b - Matrix::Identity(n, n);
  Matrix power = Matrix::Identity(n, n);
  SquareRoot out;
  out.half = Matrix::Identity(n, n);
  out.inv_half = Matrix::Identity(n, n);
  out.series_only = true;
  double c_half = 1.0;
  double c_inv = 1.0;
  for (int k = 1; k < max_terms; ++k) {
    power = power * delta;
    c_half *= (0.5 - (k - 1)) / k;
    c_inv *= (-0.5 - (k - 1)) / k;
    const Matrix term_half = c_half * power;
    const Matrix term_inv = c_inv * power;
    out.half += term_half;
    out.inv_half += term_inv;
    if (term_half.norm() < term_cutoff && term_inv.norm() < term_cutoff) break;
  }
  return out;
}

SquareRoot sqrt_near_identity(const KreinSpace& space, const Matrix& b, const Tolerances& tol) {
  if (b.rows() != space.dim() || b.cols() != space.dim()) {
    fail(Errc::dimension_mismatch, "operator does not match the Krein space dimension");
  }
  const Eigen::Index n = b.rows();
  const double gram_condition = condition_number(space.gram());
  const double sym_bound = tol.tol * std::max(1.0, b.norm()) * gram_condition;
  const double sym = space.symmetry_residual(b);
  if (sym > sym_bound) {
    fail(Errc::not_symmetric, "||B - B*|| = " + std::to_string(sym));
  }
  const double distance = operator_norm(b - Matrix::Identity(n, n));
  if (!(distance < tol.radius_series)) {
    fail(Errc::out_of_convergence_radius, "||B - 1|| = " + std::to_string(distance) +
                                              " >= " + std::to_string(tol.radius_series));
  }
  try {
    SquareRoot root = principal_sqrt(b, tol);
    const double residual = (root.half * root.half - b).norm();
    if (residual <= tol.tol_sqrt * std::max(1.0, b.norm())) return root;
  } catch (const Error& e) {
    if (e.code() != Errc::not_invertible) throw;
  }
  return sqrt_series(b);
}

PolarDecomposition polar_decompose(const KreinSpace& space, const Matrix& a, const Tolerances& tol) {
  const Matrix b = space.adjoint(a) * a;
  // A^*A is symmetric by construction; remove rounding asymmetry before the check
  const Matrix b_sym = 0.5 * (b + space.adjoint(b));
  const SquareRoot root = sqrt_near_identity(space, b_sym, tol);
  PolarDecomposition out;
  out.symmetric = root.half;
  out.unitary = a * root.inv_half;
  out.series_only = root.series_only;
  return out;
}

Matrix cayley_unitary(const KreinSpace& space, const Matrix& k_hermitian) {
  const Eigen::Index n = space.dim();
  if (k_hermitian.rows() != n || k_hermitian.cols() != n) {
    fail(Errc::dimension_mismatch, "generator does not match the Krein space dimension");
  }
  const Matrix h = space.gram_inverse() * hermitian_part(k_hermitian);
  const Matrix id = Matrix::Identity(n, n);
  const Matrix num = id + 0.5 * kI * h;
  const Matrix den = id - 0.5 * kI * h;
  return num * den.partialPivLu().inverse();
}

}  // namespace cfsgauge::krein
