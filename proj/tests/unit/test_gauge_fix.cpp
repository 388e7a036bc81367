#include "cfsgauge/gauge_fix.hpp"
#include "common.hpp"

using namespace cfsgauge;
using namespace cfsgauge::gauge;

namespace {

manifold::ChartFrame random_frame(Random& rng, int f) {
  return manifold::ChartFrame(core::CorrelationOperator(rng.regular_operator(f, 2, 2), 2));
}

core::CorrelationOperator near(Random& rng, const manifold::ChartFrame& frame, double size) {
  const Matrix psi = frame.base().psi + rng.with_norm(4, frame.f(), size);
  return core::CorrelationOperator(psi.adjoint() * frame.X() * psi, 2);
}

}  // namespace

TEST(Gauge, RealizationIsGaugeInvariant) {
  testutil::for_seeds(20, 900, [](Random& rng) {
    const auto frame = random_frame(rng, 7);
    const krein::KreinSpace space = frame.base().spin.krein_space();
    const WaveChartPoint w{Matrix::Identity(4, 4) + rng.with_norm(4, 4, 0.1),
                           rng.with_norm(4, 3, 0.2)};
    const Matrix u = krein::cayley_unitary(space, rng.hermitian(4));
    const WaveChartPoint uw{u * w.psi_I, u * w.psi_J};
    EXPECT_LT((realize(frame, w).matrix - realize(frame, uw).matrix).norm(), 1e-10);
    const auto witness = gauge_orbit_witness(frame, w, uw);
    ASSERT_TRUE(witness.has_value());
    EXPECT_LT((*witness - u).norm(), 1e-10);
  });
}

TEST(Gauge, WitnessRejectsDifferentPoints) {
  Random rng(12);
  const auto frame = random_frame(rng, 6);
  const WaveChartPoint w = base_wave(frame);
  WaveChartPoint v = w;
  v.psi_J = rng.with_norm(4, 2, 0.1);
  EXPECT_FALSE(gauge_orbit_witness(frame, w, v).has_value());
  WaveChartPoint singular = w;
  singular.psi_I.setZero();
  EXPECT_ERRC(gauge_orbit_witness(frame, singular, w), Errc::not_invertible);
}

TEST(Gauge, BaseWaveRealizesBase) {
  Random rng(13);
  const auto frame = random_frame(rng, 6);
  EXPECT_LT((realize(frame, base_wave(frame)).matrix - frame.base().op.matrix).norm(), 1e-12);
  EXPECT_LT((ambient(frame, base_wave(frame)) - frame.base().psi).norm(), 1e-12);
}

TEST(Gauge, SymmetrizeKeepsThePoint) {
  testutil::for_seeds(20, 1000, [](Random& rng) {
    const auto frame = random_frame(rng, 6);
    const krein::KreinSpace space = frame.base().spin.krein_space();
    const WaveChartPoint w{krein::cayley_unitary(space, rng.hermitian_with_norm(4, 0.5)) *
                               (Matrix::Identity(4, 4) + rng.with_norm(4, 4, 0.05)),
                           rng.with_norm(4, 2, 0.2)};
    const WaveChartPoint s = symmetrize(frame, w);
    EXPECT_LT(space.symmetry_residual(s.psi_I), 1e-10);
    EXPECT_LT((realize(frame, s).matrix - realize(frame, w).matrix).norm(), 1e-10);
  });
}

TEST(Gauge, SymmetricChartEqualsGaussianWaveMap) {
  testutil::for_seeds(15, 1100, [](Random& rng) {
    const auto frame = random_frame(rng, 8);
    const core::CorrelationOperator y = near(rng, frame, 0.03);
    const core::RegularPoint py(y);
    const SymmetricChartValue v = symmetric_wave_chart(frame, py);
    const WaveChartPoint g = gaussian_wave_map(frame, manifold::chart_inverse(frame, y));
    EXPECT_LT((v.psi - ambient(frame, g)).norm(), 1e-9);
    EXPECT_LT((realize(frame, v.point).matrix - y.matrix).norm(), 1e-10);
    EXPECT_LT(connecting_unitarity_residual(frame, py, v.connecting), 1e-10);
  });
}

TEST(Gauge, GaussianWaveMapRealizesChart) {
  Random rng(14);
  const auto frame = random_frame(rng, 6);
  const manifold::ChartCoordinates c{rng.hermitian_with_norm(4, 0.2), rng.with_norm(4, 2, 0.4)};
  EXPECT_LT((realize(frame, gaussian_wave_map(frame, c)).matrix -
             manifold::chart_forward(frame, c).matrix)
                .norm(),
            1e-10);
}

TEST(Gauge, CanonicalTargetIsIsometry) {
  Random rng(15);
  const auto frame = random_frame(rng, 5);
  const CanonicalTarget t = canonical_target(frame.X());
  EXPECT_LT((t.u_x.adjoint() * t.gram * t.u_x + frame.X()).norm(), 1e-12);
  EXPECT_NEAR(t.gram.trace().real(), 0.0, 1e-15);
}

TEST(Gauge, BuildGaugeChecksUx) {
  Random rng(16);
  const auto frame = random_frame(rng, 6);
  const CanonicalTarget t = canonical_target(frame.X());
  const std::vector<core::CorrelationOperator> omega = {frame.base().op, near(rng, frame, 0.02)};
  const GaugeMap g = build_gauge(frame, omega, t.u_x, t.gram);
  for (const double r : g.residuals) EXPECT_LT(r, 1e-10);
  EXPECT_ERRC(build_gauge(frame, omega, 2.0 * t.u_x, t.gram), Errc::not_unitary);
  EXPECT_ERRC(build_gauge(frame, omega, Matrix::Identity(3, 4), t.gram), Errc::dimension_mismatch);
}

TEST(Gauge, OrthogonalPointIsOutOfChartDomain) {
  Random rng(17);
  const auto frame = random_frame(rng, 8);
  // S_y orthogonal to S_x gives P(x,y) = 0
  Matrix blocks = Matrix::Zero(8, 8);
  blocks.block(4, 4, 4, 4) = frame.X();
  const core::RegularPoint y(core::CorrelationOperator(frame.from_blocks(blocks), 2));
  EXPECT_ERRC(symmetric_wave_chart(frame, y), Errc::out_of_chart_domain);
}
