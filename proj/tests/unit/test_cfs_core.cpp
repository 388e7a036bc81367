#include "cfsgauge/cfs_core.hpp"
#include "common.hpp"

using namespace cfsgauge;

TEST(Core, SpinSpaceOfDiagonalOperator) {
  Matrix x = Matrix::Zero(6, 6);
  x(0, 0) = 1.0;
  x(2, 2) = 3.0;
  x(3, 3) = -1.0;
  x(5, 5) = -2.0;
  const core::SpinSpaceData s = core::spin_space(core::CorrelationOperator(x, 2));
  const Complex expected[] = {3.0, 1.0, -1.0, -2.0};
  for (int i = 0; i < 4; ++i) EXPECT_LT(std::abs(s.X(i, i) - expected[i]), 1e-14);
  EXPECT_LT((s.spin_gram + s.X).norm(), 1e-15);
  EXPECT_LT((s.basis.adjoint() * s.basis - Matrix::Identity(4, 4)).norm(), 1e-14);
}

TEST(Core, RegularityErrors) {
  Matrix x = Matrix::Zero(4, 4);
  x(0, 0) = 1.0;
  x(1, 1) = 2.0;
  x(2, 2) = -1.0;
  EXPECT_FALSE(core::is_regular(core::CorrelationOperator(x, 2)));
  EXPECT_ERRC(core::spin_space(core::CorrelationOperator(x, 2)), Errc::not_regular);
  x(0, 1) = 1.0;
  EXPECT_ERRC(core::spin_space(core::CorrelationOperator(x, 2)), Errc::not_hermitian);
}

TEST(Core, KernelRoutesAgree) {
  testutil::for_seeds(25, 400, [](Random& rng) {
    const int f = rng.uniform_int(4, 10);
    const core::RegularPoint x(core::CorrelationOperator(rng.regular_operator(f, 2, 2), 2));
    const core::RegularPoint y(core::CorrelationOperator(rng.regular_operator(f, 2, 2), 2));
    EXPECT_LT(core::reconstruction_residual(x), 1e-12);
    const Matrix pxy = core::kernel(x, y);
    EXPECT_LT((pxy - core::kernel_braket(x, y)).norm(), 1e-12);
    // P(y,x) is the Krein adjoint of P(x,y)
    EXPECT_LT((core::kernel(y, x) - core::kernel_adjoint(pxy, x.spin, y.spin)).norm(), 1e-12);
    // x restricted to S_x equals P(x,x)
    EXPECT_LT((core::kernel(x, x) - x.X()).norm(), 1e-12);
    EXPECT_LT((core::closed_chain(x, y) - pxy * core::kernel(y, x)).norm(), 1e-12);
  });
}

TEST(Core, LocalCorrelationIsHermitian) {
  testutil::for_seeds(10, 500, [](Random& rng) {
    Matrix g = Matrix::Zero(4, 4);
    g.diagonal() << 1.0, 1.0, -1.0, -1.0;
    const Matrix e = rng.gaussian(4, 9);
    const Matrix f = core::local_correlation(e, g);
    EXPECT_LT(hermiticity_residual(f), 1e-14);
    const Signature s = core::correlation_signature(f);
    EXPECT_EQ(s.positive, 2);
    EXPECT_EQ(s.negative, 2);
  });
}
