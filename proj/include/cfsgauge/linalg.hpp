#pragma once

#include <complex>

#include <Eigen/Dense>

namespace cfsgauge {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;

inline constexpr Complex kI{0.0, 1.0};

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;

  bool operator==(const Signature&) const = default;
};

// Largest singular value.
double operator_norm(const Matrix& m);
double smallest_singular_value(const Matrix& m);
// sigma_max / sigma_min; infinity for singular input.
double condition_number(const Matrix& m);

Matrix hermitian_part(const Matrix& m);
double hermiticity_residual(const Matrix& m);

// Eigenvalue sign counts of a Hermitian matrix; |lambda| <= threshold counts as zero.
Signature signature_of(const Matrix& hermitian, double threshold);
Signature count_signs(const RealVector& eigenvalues, double threshold);

// Matrix of the sorted real eigenvalues of a Hermitian matrix (ascending).
RealVector hermitian_eigenvalues(const Matrix& hermitian);

}  // namespace cfsgauge
