#include "cfsgauge/random.hpp"

#include <cmath>

namespace cfsgauge {

double Random::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Random::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

int Random::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

Complex Random::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) * std::sqrt(0.5);
}

Matrix Random::gaussian(Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  // column-major fill order is part of the reproducibility contract
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  }
  return m;
}

Matrix Random::hermitian(Eigen::Index n) {
  const Matrix g = gaussian(n, n);
  return 0.5 * (g + g.adjoint());
}

Matrix Random::unitary(Eigen::Index n) {
  const Matrix g = gaussian(n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

Matrix Random::with_norm(Eigen::Index rows, Eigen::Index cols, double norm) {
  Matrix m = gaussian(rows, cols);
  const double current = m.norm();
  return current > 0.0 ? Matrix(m * (norm / current)) : m;
}

Matrix Random::hermitian_with_norm(Eigen::Index n, double norm) {
  Matrix m = hermitian(n);
  const double current = m.norm();
  return current > 0.0 ? Matrix(m * (norm / current)) : m;
}

Matrix Random::regular_operator(int f, int p, int q, double lo, double hi) {
  RealVector lambda = RealVector::Zero(f);
  for (int i = 0; i < p; ++i) lambda(i) = uniform(lo, hi);
  for (int i = 0; i < q; ++i) lambda(p + i) = -uniform(lo, hi);
  const Matrix u = unitary(f);
  Matrix x = u * lambda.cast<Complex>().asDiagonal() * u.adjoint();
  return 0.5 * (x + x.adjoint());
}

}  // namespace cfsgauge
