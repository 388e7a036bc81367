#pragma once

#include "cfsgauge/linalg.hpp"
#include "cfsgauge/tolerances.hpp"

// Linear algebra on finite-dimensional indefinite inner product spaces.
//
// A KreinSpace is C^dim with the inner product <u|v> = u^dagger G v for an
// invertible Hermitian Gram matrix G. Adjoints, unitarity and symmetry are
// taken with respect to G:
//
//   A^*  = G^{-1} A^dagger G
//   U unitary    <=>  U^dagger G U = G
//   S symmetric  <=>  S^* = S
//
// Residuals are measured in the Frobenius norm; convergence radii in the
// operator (spectral) norm.
namespace cfsgauge::krein {

class KreinSpace {
 public:
  // Signature inferred from the Gram matrix.
  explicit KreinSpace(Matrix gram, const Tolerances& tol = {});
  // Signature checked against the declared (p, q).
  KreinSpace(Matrix gram, int p, int q, const Tolerances& tol = {});

  // diag(+1 x p, -1 x q)
  static KreinSpace standard(int p, int q);

  int dim() const { return static_cast<int>(gram_.rows()); }
  int p() const { return p_; }
  int q() const { return q_; }
  const Matrix& gram() const { return gram_; }
  const Matrix& gram_inverse() const { return gram_inv_; }

  Matrix adjoint(const Matrix& a) const;

  double unitarity_residual(const Matrix& u) const;
  double symmetry_residual(const Matrix& s) const;
  bool is_unitary(const Matrix& u, double tol) const { return unitarity_residual(u) <= tol; }
  bool is_symmetric(const Matrix& s, double tol) const { return symmetry_residual(s) <= tol; }

 private:
  void check_dimensions(const Matrix& a) const;

  Matrix gram_;
  Matrix gram_inv_;
  int p_ = 0;
  int q_ = 0;
};

struct SquareRoot {
  Matrix half;
  Matrix inv_half;
  // Set when the eigenbasis was too ill-conditioned and the binomial series
  // was used instead of diagonalization.
  bool series_only = false;
};

// Principal square root B^{1/2} and its inverse by diagonalization. An
// ill-conditioned eigenbasis with all eigenvalues clustered around the mean
// mu (||B/mu - 1|| < radius_series) is handled by the binomial series of B/mu,
// and series_only is set. Throws BranchCut if an eigenvalue lies on (-inf, 0],
// NotInvertible if the eigenbasis is defective otherwise.
SquareRoot principal_sqrt(const Matrix& b, const Tolerances& tol = {});

// Binomial series B^{+-1/2} = sum_n binom(+-1/2, n) (B - 1)^n, truncated when
// the term norm drops below `term_cutoff` or after `max_terms` terms.
SquareRoot sqrt_series(const Matrix& b, int max_terms = 200, double term_cutoff = 1e-15);

// Coefficient binom(1/2, n) resp. binom(-1/2, n).
double sqrt_series_coefficient(int n);
double inv_sqrt_series_coefficient(int n);

// Square root of a Krein-symmetric B with ||B - 1|| < radius_series.
// Diagonalization is the primary route; a defective eigenbasis falls back to
// the series and sets series_only.
SquareRoot sqrt_near_identity(const KreinSpace& space, const Matrix& b, const Tolerances& tol = {});

struct PolarDecomposition {
  Matrix unitary;    // U, Krein-unitary
  Matrix symmetric;  // S = (A^* A)^{1/2}, Krein-symmetric
  bool series_only = false;
};

// A = U S with U = A (A^*A)^{-1/2}, S = (A^*A)^{1/2}; unique for A near 1.
PolarDecomposition polar_decompose(const KreinSpace& space, const Matrix& a,
                                   const Tolerances& tol = {});

// Cayley transform (1 + iH/2)(1 - iH/2)^{-1} of H = G^{-1} K for Hermitian K.
// H is Krein-symmetric, so the result is Krein-unitary.
Matrix cayley_unitary(const KreinSpace& space, const Matrix& k_hermitian);

}  // namespace cfsgauge::krein
