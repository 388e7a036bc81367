#include <cmath>

#include "cfsgauge/krein.hpp"
#include "common.hpp"

using namespace cfsgauge;
using krein::KreinSpace;

namespace {

Matrix random_gram(Random& rng, int p, int q) {
  RealVector d(p + q);
  for (int i = 0; i < p + q; ++i) d(i) = (i < p ? 1.0 : -1.0) * rng.uniform(0.5, 2.0);
  const Matrix w = rng.unitary(p + q);
  return w * d.cast<Complex>().asDiagonal() * w.adjoint();
}

}  // namespace

TEST(Krein, AdjointOfStandardSpaceFlipsOffDiagonalSigns) {
  const KreinSpace s = KreinSpace::standard(1, 1);
  Matrix a(2, 2);
  a << Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8);
  Matrix expected(2, 2);
  expected << Complex(1, -2), Complex(-5, 6), Complex(-3, 4), Complex(7, -8);
  EXPECT_LT((s.adjoint(a) - expected).norm(), 1e-15);
}

TEST(Krein, GramValidation) {
  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  EXPECT_ERRC(KreinSpace(singular), Errc::singular_gram);
  EXPECT_ERRC(KreinSpace(Matrix(Matrix::Identity(2, 2)), 1, 1), Errc::signature_mismatch);
  Matrix not_herm = Matrix::Identity(2, 2);
  not_herm(0, 1) = 1.0;
  EXPECT_ERRC(KreinSpace(not_herm), Errc::not_hermitian);
  EXPECT_ERRC(KreinSpace::standard(1, 1).adjoint(Matrix::Identity(3, 3)), Errc::dimension_mismatch);
}

TEST(Krein, AdjointIsAntiInvolution) {
  testutil::for_seeds(30, 100, [](Random& rng) {
    const int p = rng.uniform_int(1, 3), q = rng.uniform_int(1, 3);
    const KreinSpace s(random_gram(rng, p, q), p, q);
    const Matrix a = rng.gaussian(p + q, p + q), b = rng.gaussian(p + q, p + q);
    EXPECT_LT((s.adjoint(s.adjoint(a)) - a).norm(), 1e-12 * a.norm());
    EXPECT_LT((s.adjoint(a * b) - s.adjoint(b) * s.adjoint(a)).norm(), 1e-12 * a.norm() * b.norm());
    // <u|A v> = <A* u|v>
    const Vector u = rng.gaussian(p + q, 1), v = rng.gaussian(p + q, 1);
    const Complex lhs = (u.adjoint() * s.gram() * a * v)(0, 0);
    const Complex rhs = ((s.adjoint(a) * u).adjoint() * s.gram() * v)(0, 0);
    EXPECT_LT(std::abs(lhs - rhs), 1e-12 * (1.0 + std::abs(lhs)));
  });
}

TEST(Krein, SeriesCoefficientsMatchBinomials) {
  const double half[] = {1.0, 0.5, -0.125, 0.0625, -0.0390625};
  const double inv_half[] = {1.0, -0.5, 0.375, -0.3125, 0.2734375};
  for (int n = 0; n < 5; ++n) {
    EXPECT_DOUBLE_EQ(krein::sqrt_series_coefficient(n), half[n]);
    EXPECT_DOUBLE_EQ(krein::inv_sqrt_series_coefficient(n), inv_half[n]);
  }
}

TEST(Krein, PrincipalSqrtOfDiagonal) {
  Matrix b = Matrix::Zero(2, 2);
  b(0, 0) = 4.0;
  b(1, 1) = 9.0;
  const krein::SquareRoot r = krein::principal_sqrt(b);
  EXPECT_NEAR(std::abs(r.half(0, 0) - 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(r.half(1, 1) - 3.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(r.inv_half(1, 1) - 1.0 / 3.0), 0.0, 1e-14);
  b(1, 1) = -1.0;
  EXPECT_ERRC(krein::principal_sqrt(b), Errc::branch_cut);
}

TEST(Krein, PrincipalSqrtOfDefectiveMatrix) {
  Matrix jordan = Matrix::Identity(2, 2);
  jordan(0, 1) = 1.0;
  EXPECT_ERRC(krein::principal_sqrt(jordan), Errc::not_invertible);
  const krein::SquareRoot s = krein::sqrt_series(jordan);
  EXPECT_LT((s.half * s.half - jordan).norm(), 1e-14);
}

TEST(Krein, SqrtNearIdentityChecksDomain) {
  const KreinSpace s = KreinSpace::standard(1, 1);
  Matrix far = Matrix::Identity(2, 2) * 2.0;
  EXPECT_ERRC(krein::sqrt_near_identity(s, far), Errc::out_of_convergence_radius);
  Matrix nonsym = Matrix::Identity(2, 2);
  nonsym(0, 1) = 0.1;
  nonsym(1, 0) = 0.1;  // Krein adjoint flips this to -0.1
  EXPECT_ERRC(krein::sqrt_near_identity(s, nonsym), Errc::not_symmetric);
}

TEST(Krein, SqrtRoutesAgreeAndSquare) {
  testutil::for_seeds(40, 200, [](Random& rng) {
    const int n = rng.uniform_int(1, 3);
    const KreinSpace s(random_gram(rng, n, n), n, n);
    const Matrix id = Matrix::Identity(2 * n, 2 * n);
    Matrix k = rng.hermitian(2 * n);
    const double scale = rng.uniform(0.0, 0.35) / operator_norm(s.gram_inverse() * k);
    const Matrix b = id + scale * s.gram_inverse() * k;
    const krein::SquareRoot near = krein::sqrt_near_identity(s, b);
    const krein::SquareRoot series = krein::sqrt_series(b);
    EXPECT_LT((near.half * near.half - b).norm(), 1e-12);
    EXPECT_LT((near.half * near.inv_half - id).norm(), 1e-12);
    EXPECT_LT((near.half - series.half).norm(), 1e-12);
    EXPECT_LT(s.symmetry_residual(near.half), 1e-12);
  });
}

TEST(Krein, CayleyIsUnitaryAndPolarRecoversFactors) {
  testutil::for_seeds(40, 300, [](Random& rng) {
    const int n = rng.uniform_int(1, 2);
    const KreinSpace s(random_gram(rng, n, n), n, n);
    const Matrix u = krein::cayley_unitary(s, rng.hermitian_with_norm(2 * n, rng.uniform(0, 2)));
    EXPECT_LT(s.unitarity_residual(u), 1e-12);
    const double scale = 0.3 / std::max(1.0, operator_norm(s.gram_inverse()));
    const Matrix sym =
        Matrix::Identity(2 * n, 2 * n) + s.gram_inverse() * rng.hermitian_with_norm(2 * n, scale);
    const krein::PolarDecomposition pd = krein::polar_decompose(s, u * sym);
    EXPECT_LT((pd.unitary - u).norm(), 1e-10);
    EXPECT_LT((pd.symmetric - sym).norm(), 1e-10);
  });
}

TEST(Krein, PrincipalSqrtOfNearScalarMatrix) {
  Random rng(24);
  // a scalar matrix plus rounding-level non-normal noise has an arbitrary eigenbasis
  const Matrix b = 0.04 * Matrix::Identity(4, 4) + 1e-18 * rng.gaussian(4, 4);
  const krein::SquareRoot r = krein::principal_sqrt(b);
  EXPECT_LT((r.half * r.half - b).norm(), 1e-15);
  EXPECT_LT((r.half - 0.2 * Matrix::Identity(4, 4)).norm(), 1e-14);
}
