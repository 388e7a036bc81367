#pragma once

#include <cstdint>
#include <random>

#include "cfsgauge/linalg.hpp"

namespace cfsgauge {

// Seeded source for every randomized trial. Random matrices are drawn from
// independent standard complex Gaussians (real and imaginary parts N(0, 1/2)),
// then Hermitian-symmetrized, orthonormalized or rescaled as documented on each
// generator.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  double normal();
  int uniform_int(int lo, int hi);  // inclusive
  Complex complex_normal();

  Matrix gaussian(Eigen::Index rows, Eigen::Index cols);
  // (G + G^dagger) / 2 of a complex Gaussian G.
  Matrix hermitian(Eigen::Index n);
  // Q factor of the QR decomposition of a complex Gaussian, phases normalized.
  Matrix unitary(Eigen::Index n);
  // Gaussian matrix rescaled to the given Frobenius norm.
  Matrix with_norm(Eigen::Index rows, Eigen::Index cols, double norm);
  // Hermitian matrix with Frobenius norm `norm`.
  Matrix hermitian_with_norm(Eigen::Index n, double norm);

  // Rank p+q Hermitian f x f matrix Q diag(lambda) Q^dagger, with p eigenvalues
  // drawn from U(lo, hi), q from U(-hi, -lo), the rest zero.
  Matrix regular_operator(int f, int p, int q, double lo = 1.0, double hi = 3.0);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cfsgauge
