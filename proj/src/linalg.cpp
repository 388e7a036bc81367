#include "cfsgauge/linalg.hpp"

#include <limits>

#include "cfsgauge/error.hpp"

namespace cfsgauge {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::singular_gram: return "SingularGram";
    case Errc::signature_mismatch: return "SignatureMismatch";
    case Errc::not_hermitian: return "NotHermitian";
    case Errc::out_of_convergence_radius: return "OutOfConvergenceRadius";
    case Errc::not_symmetric: return "NotSymmetric";
    case Errc::branch_cut: return "BranchCut";
    case Errc::not_regular: return "NotRegular";
    case Errc::signature_lost: return "SignatureLost";
    case Errc::too_far_from_base: return "TooFarFromBase";
    case Errc::invalid_signature: return "InvalidSignature";
    case Errc::not_invertible: return "NotInvertible";
    case Errc::out_of_chart_domain: return "OutOfChartDomain";
    case Errc::empty_cutoff: return "EmptyCutoff";
    case Errc::massless_normalization: return "MasslessNormalization";
    case Errc::too_few_modes: return "TooFewModes";
    case Errc::invalid_box: return "InvalidBox";
    case Errc::degenerate_chain: return "DegenerateChain";
    case Errc::not_diagonal_kernel: return "NotDiagonalKernel";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_unitary: return "NotUnitary";
    case Errc::config_error: return "ConfigError";
    case Errc::task_error: return "TaskError";
  }
  return "Unknown";
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double smallest_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double hermiticity_residual(const Matrix& m) { return (m - m.adjoint()).norm(); }

Signature count_signs(const RealVector& eigenvalues, double threshold) {
  Signature s;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues(i) > threshold) {
      ++s.positive;
    } else if (eigenvalues(i) < -threshold) {
      ++s.negative;
    } else {
      ++s.zero;
    }
  }
  return s;
}

RealVector hermitian_eigenvalues(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(hermitian), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Signature signature_of(const Matrix& hermitian, double threshold) {
  return count_signs(hermitian_eigenvalues(hermitian), threshold);
}

}  // namespace cfsgauge
