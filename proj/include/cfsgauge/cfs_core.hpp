#pragma once

#include "cfsgauge/krein.hpp"
#include "cfsgauge/linalg.hpp"
#include "cfsgauge/tolerances.hpp"

// Causal fermion system data at finitely many spacetime points.
//
// A point is a Hermitian f x f operator x of rank p+q with p positive and q
// negative eigenvalues. Its spin space S_x = x(H) carries the spin inner
// product <u|v>_x = -<u|x v>, so in an orthonormal basis of S_x the spin Gram
// matrix is -X with X = x|_{S_x}.
namespace cfsgauge::core {

struct CorrelationOperator {
  Matrix matrix;
  int p = 0;
  int q = 0;

  CorrelationOperator() = default;
  // Expected signature (n, n).
  CorrelationOperator(Matrix m, int n) : matrix(std::move(m)), p(n), q(n) {}
  CorrelationOperator(Matrix m, int p_, int q_) : matrix(std::move(m)), p(p_), q(q_) {}

  int f() const { return static_cast<int>(matrix.rows()); }
  int rank() const { return p + q; }
};

struct SpinSpaceData {
  Matrix basis;      // f x (p+q), orthonormal columns spanning x(H)
  Matrix X;          // basis^dagger x basis
  Matrix spin_gram;  // -X
  int p = 0;
  int q = 0;

  int dim() const { return p + q; }
  krein::KreinSpace krein_space(const Tolerances& tol = {}) const;
};

// Eigenvalue counts of x above / below +-rank_rel * ||x||.
Signature correlation_signature(const Matrix& x, const Tolerances& tol = {});
bool is_regular(const CorrelationOperator& x, const Tolerances& tol = {});

// Eigenvectors of the p+q nonzero eigenvalues, ordered by descending
// eigenvalue, each phase fixed so that its largest-magnitude entry is real
// positive. Throws NotRegular unless the counts are exactly (p, q).
SpinSpaceData spin_space(const CorrelationOperator& x, const Tolerances& tol = {});

// Psi(x) = basis^dagger, the orthogonal projection onto S_x in spin coordinates.
Matrix wave_evaluation(const SpinSpaceData& spin);

// F_ij = -<psi_i | psi_j> for wave values psi_j = column j of `wave_values`
// in a spinor space with Gram matrix `spinor_gram`.
Matrix local_correlation(const Matrix& wave_values, const Matrix& spinor_gram);

// A regular point together with its spin space and wave evaluation.
struct RegularPoint {
  CorrelationOperator op;
  SpinSpaceData spin;
  Matrix psi;  // wave evaluation, (p+q) x f

  explicit RegularPoint(CorrelationOperator x, const Tolerances& tol = {});
  const Matrix& X() const { return spin.X; }
};

// P(x,y) = pi_x y |_{S_y} in the spin bases of x and y.
Matrix kernel(const RegularPoint& x, const RegularPoint& y);
// P(x,y) = -Psi(x) Psi(y)^*, with Psi(y)^* = Psi(y)^dagger G_y.
Matrix kernel_braket(const RegularPoint& x, const RegularPoint& y);
// A_xy = P(x,y) P(y,x), an endomorphism of S_x.
Matrix closed_chain(const RegularPoint& x, const RegularPoint& y);

// Krein adjoint of a map S_y -> S_x: G_y^{-1} K^dagger G_x.
Matrix kernel_adjoint(const Matrix& k, const SpinSpaceData& x, const SpinSpaceData& y);

// ||x - Psi^dagger X Psi||_F
double reconstruction_residual(const RegularPoint& x);

}  // namespace cfsgauge::core
