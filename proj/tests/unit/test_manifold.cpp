#include <cmath>

#include "cfsgauge/manifold.hpp"
#include "common.hpp"

using namespace cfsgauge;
using namespace cfsgauge::manifold;

namespace {

ChartFrame random_frame(Random& rng, int p, int q, int f) {
  return ChartFrame(core::CorrelationOperator(rng.regular_operator(f, p, q), p, q));
}

}  // namespace

TEST(Manifold, DimensionFormula) {
  EXPECT_EQ(manifold_dim(1, 1, 4), 12);
  EXPECT_EQ(manifold_dim(2, 2, 8), 48);
  EXPECT_EQ(manifold_dim(2, 2, 12), 80);
  EXPECT_EQ(manifold_dim(0, 0, 5), 0);
  EXPECT_ERRC(manifold_dim(3, 3, 5), Errc::invalid_signature);
  EXPECT_ERRC(manifold_dim(-1, 1, 5), Errc::invalid_signature);
}

TEST(Manifold, PackUnpackRoundTrip) {
  testutil::for_seeds(20, 600, [](Random& rng) {
    const int r = rng.uniform_int(1, 4), f = r + rng.uniform_int(0, 4);
    const ChartCoordinates c{rng.hermitian(r), rng.gaussian(r, f - r)};
    const RealVector v = pack(c);
    EXPECT_EQ(v.size(), 2 * r * f - r * r);
    const ChartCoordinates back = unpack(v, r, f);
    EXPECT_LT((back.A - c.A).norm(), 1e-15);
    EXPECT_LT((back.B - c.B).norm(), 1e-15);
  });
}

TEST(Manifold, VectorizeDotIsTraceOfProduct) {
  Random rng(7);
  const Matrix u = rng.hermitian(5), v = rng.hermitian(5);
  EXPECT_NEAR(vectorize(u).dot(vectorize(v)), (u * v).trace().real(), 1e-12);
  EXPECT_NEAR(riemannian_metric(u, v), (u * v).trace().real(), 1e-12);
}

TEST(Manifold, OriginMapsToBase) {
  Random rng(8);
  const ChartFrame frame = random_frame(rng, 2, 1, 6);
  EXPECT_LT((chart_forward(frame, frame.zero()).matrix - frame.base().op.matrix).norm(), 1e-13);
  EXPECT_LT((frame.frame().adjoint() * frame.frame() - Matrix::Identity(6, 6)).norm(), 1e-13);
}

TEST(Manifold, RoundTripProperty) {
  testutil::for_seeds(30, 700, [](Random& rng) {
    const int p = rng.uniform_int(1, 2), q = rng.uniform_int(1, 2);
    const int f = p + q + rng.uniform_int(1, 5);
    const ChartFrame frame = random_frame(rng, p, q, f);
    const ChartCoordinates c{rng.hermitian_with_norm(p + q, 0.3),
                             rng.with_norm(p + q, f - p - q, rng.uniform(0.0, 0.8))};
    const core::CorrelationOperator y = chart_forward(frame, c);
    EXPECT_TRUE(core::is_regular(y));
    const ChartCoordinates back = chart_inverse(frame, y);
    EXPECT_LT((back.A - c.A).norm(), 1e-10);
    EXPECT_LT((back.B - c.B).norm(), 1e-10);
  });
}

TEST(Manifold, DomainErrors) {
  Random rng(9);
  const ChartFrame frame = random_frame(rng, 1, 1, 4);
  ChartCoordinates c = frame.zero();
  c.A = -frame.X();  // X + A = 0
  EXPECT_ERRC(chart_forward(frame, c), Errc::signature_lost);
  // a point whose spin space is orthogonal to I
  Matrix y = Matrix::Zero(4, 4);
  y.block(2, 2, 2, 2) = frame.X();
  const core::CorrelationOperator far(frame.frame() * y * frame.frame().adjoint(), 1, 1);
  EXPECT_ERRC(chart_inverse(frame, far), Errc::too_far_from_base);
}

TEST(Manifold, JacobianAgreesWithFiniteDifferences) {
  Random rng(10);
  const ChartFrame frame = random_frame(rng, 1, 2, 5);
  const ChartCoordinates c{rng.hermitian_with_norm(3, 0.2), rng.with_norm(3, 2, 0.5)};
  const RealMatrix j = chart_jacobian(frame, c);
  const RealMatrix j_fd = chart_jacobian_fd(frame, c, 1e-5);
  EXPECT_LT((j - j_fd).norm() / j.norm(), 1e-8);
  EXPECT_EQ(numeric_rank(j, 1e-6), manifold_dim(1, 2, 5));
}

TEST(Manifold, GaussianChartQuadraticTerm) {
  testutil::for_seeds(5, 800, [](Random& rng) {
    const ChartFrame frame = random_frame(rng, 1, 1, 5);
    const int dim = manifold_dim(1, 1, 5);
    RealVector a(dim), b(dim);
    for (int i = 0; i < dim; ++i) a(i) = rng.normal(), b(i) = rng.normal();
    const GaussianReport g = gaussian_check(frame, unpack(a / a.norm(), 2, 5),
                                            unpack(b / b.norm(), 2, 5), {0.08, 0.04, 0.02});
    EXPECT_LT(g.c2_rel_error, 1e-8);
    for (const double q : g.ratios) {
      EXPECT_GT(q, 12.0);
      EXPECT_LT(q, 20.0);
    }
  });
}

TEST(Manifold, MetricIsStationaryAtOrigin) {
  Random rng(11);
  const ChartFrame frame = random_frame(rng, 1, 1, 4);
  EXPECT_LT(metric_gradient_at_origin(frame, 1e-4), 1e-6);
  // away from the origin the metric does vary
  const RealMatrix g0 = metric_in_chart(frame, frame.zero());
  ChartCoordinates c = frame.zero();
  c.B = rng.with_norm(2, 2, 0.3);
  EXPECT_GT((metric_in_chart(frame, c) - g0).norm(), 1e-3);
}

TEST(Manifold, TransitionMapIsSmooth) {
  testutil::for_seeds(5, 850, [](Random& rng) {
    const ChartFrame first = random_frame(rng, 1, 1, 5);
    const ChartCoordinates shift{rng.hermitian_with_norm(2, 0.1), rng.with_norm(2, 3, 0.1)};
    const ChartFrame second(chart_forward(first, shift));
    const int dim = manifold_dim(1, 1, 5);
    auto transition = [&](const RealVector& v) {
      return pack(chart_inverse(second, chart_forward(first, unpack(v, 2, 5))));
    };
    const RealVector c = pack(shift);
    RealVector dir(dim);
    for (int i = 0; i < dim; ++i) dir(i) = rng.normal();
    dir /= dir.norm();
    // second differences scale like h^2 for a smooth map: halving h quarters them
    auto second_diff = [&](double h) {
      return (transition(c + h * dir) - 2.0 * transition(c) + transition(c - h * dir)).norm();
    };
    const double ratio = second_diff(2e-3) / second_diff(1e-3);
    EXPECT_GT(ratio, 3.5);
    EXPECT_LT(ratio, 4.5);
    // and the transition fixes the shared point
    EXPECT_LT((transition(c) - pack(second.zero())).norm(), 1e-12);
  });
}
