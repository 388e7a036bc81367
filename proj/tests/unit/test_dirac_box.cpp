#include <cmath>
#include <numbers>

#include "cfsgauge/dirac_box.hpp"
#include "common.hpp"

using namespace cfsgauge;
using namespace cfsgauge::box;

namespace {

constexpr double kPi = std::numbers::pi;

const BoxConfig kMassive{kPi, 0.4, 1.0};
const BoxConfig kMassless{kPi, 0.4, 0.0};

double eta(int mu, int nu) { return mu != nu ? 0.0 : (mu == 0 ? 1.0 : -1.0); }

}  // namespace

TEST(DiracBox, CliffordRelations) {
  const auto& g = gamma_matrices().gamma;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const Matrix4 ac = g[mu] * g[nu] + g[nu] * g[mu];
      EXPECT_LT((ac - 2.0 * eta(mu, nu) * Matrix4::Identity()).norm(), 1e-15);
    }
  }
  EXPECT_LT((gamma_matrices().gram - g[0]).norm(), 0.0 + 1e-15);
}

TEST(DiracBox, ModeCounts) {
  // |n|^2 < (2.5)^2 - 1 = 5.25: shells 0,1,2,3,4,5 hold 1+6+12+8+6+24 = 57 points
  EXPECT_EQ(momentum_modes(kMassive).size(), 114u);
  // |n|^2 < 6.25 without n = 0: 6+12+8+6+24+24 = 80 points
  EXPECT_EQ(momentum_modes(kMassless).size(), 160u);
  EXPECT_ERRC(momentum_modes(BoxConfig{1.0, 2.0, 1.0}), Errc::empty_cutoff);
}

TEST(DiracBox, InvalidBox) {
  EXPECT_ERRC((BoxConfig{0.0, 1.0, 0.0}.validate()), Errc::invalid_box);
  EXPECT_ERRC((BoxConfig{1.0, -1.0, 0.0}.validate()), Errc::invalid_box);
  EXPECT_ERRC((BoxConfig{1.0, 1.0, -0.5}.validate()), Errc::invalid_box);
  EXPECT_ERRC((BoxConfig{NAN, 1.0, 0.0}.validate()), Errc::invalid_box);
}

TEST(DiracBox, TooFewModes) {
  // only n = 0 survives: f = 2
  const BoxConfig tiny{1.0, 0.9, 1.0};
  const auto modes = momentum_modes(tiny);
  ASSERT_EQ(modes.size(), 2u);
  EXPECT_ERRC(build_correlation_map(tiny, modes, {SpacetimePoint{}}), Errc::too_few_modes);
}

TEST(DiracBox, AsymptoticDimension) {
  const BoxConfig c{kPi, kPi / 8.0, 0.0};
  EXPECT_NEAR(asymptotic_dimension(c), 8.0 / (3.0 * kPi * kPi) * 512.0, 1e-9);
}

TEST(DiracBox, SpinorsSolveDiracEquation) {
  for (const auto& mode : momentum_modes(kMassive)) {
    const auto chi = chi_spinors(mode, kMassive.m);
    const Matrix4 op = slash(-mode.omega, mode.k[0], mode.k[1], mode.k[2]) -
                       kMassive.m * Matrix4::Identity();
    const Matrix4& g0 = gamma_matrices().gamma[0];
    for (int a = 0; a < 2; ++a) {
      EXPECT_LT((op * chi[a]).norm(), 1e-13);
      for (int b = 0; b < 2; ++b) {
        const Complex ip = chi[a].dot(g0 * chi[b]);
        EXPECT_LT(std::abs(ip - (a == b ? -1.0 : 0.0)), 1e-13);
      }
    }
  }
  EXPECT_ERRC(chi_spinors(momentum_modes(kMassless)[0], 0.0), Errc::massless_normalization);
}

TEST(DiracBox, NormalizedWaveMatchesPlaneWaveSpan) {
  const SpacetimePoint x{0.3, {0.1, -0.4, 1.2}};
  const auto modes = momentum_modes(kMassive);
  // the two normalizations span the same space per momentum and have the same Gram matrix
  for (std::size_t i = 0; i + 1 < modes.size(); i += 2) {
    Eigen::Matrix<Complex, 4, 2> a, b;
    a.col(0) = plane_wave(kMassive, modes[i], x);
    a.col(1) = plane_wave(kMassive, modes[i + 1], x);
    b.col(0) = normalized_wave(kMassive, modes[i], x);
    b.col(1) = normalized_wave(kMassive, modes[i + 1], x);
    const Matrix4& g0 = gamma_matrices().gamma[0];
    EXPECT_LT((a.adjoint() * g0 * a - b.adjoint() * g0 * b).norm(), 1e-15);
    EXPECT_LT((a * a.adjoint() - b * b.adjoint()).norm(), 1e-15);
  }
  EXPECT_ERRC(plane_wave(kMassless, modes[0], x), Errc::massless_normalization);
}

TEST(DiracBox, ScalarProductMatchesQuadrature) {
  // box integral of trigonometric polynomials is exact on a uniform grid
  const BoxConfig cfg{kPi, 0.6, 0.7};
  const auto modes = momentum_modes(cfg);
  const int n = 8;
  for (std::size_t i = 0; i < modes.size(); i += 3) {
    for (std::size_t j = 0; j < modes.size(); j += 5) {
      Complex sum = 0.0;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          for (int c = 0; c < n; ++c) {
            const SpacetimePoint x{0.0, {-cfg.L + 2 * cfg.L * a / n, -cfg.L + 2 * cfg.L * b / n,
                                         -cfg.L + 2 * cfg.L * c / n}};
            sum += normalized_wave(cfg, modes[i], x).dot(normalized_wave(cfg, modes[j], x));
          }
        }
      }
      const Complex quad = 2.0 * kPi * std::pow(2.0 * cfg.L, 3) * sum / double(n * n * n);
      EXPECT_LT(std::abs(quad - analytic_scalar_product(cfg, modes[i], modes[j])), 1e-12);
      EXPECT_LT(std::abs(analytic_scalar_product(cfg, modes[i], modes[i]) - 1.0), 1e-12);
    }
  }
}

TEST(DiracBox, KernelSumMatchesBraket) {
  for (const auto& cfg : {kMassive, kMassless}) {
    const auto modes = momentum_modes(cfg);
    const KernelSum ks(cfg);
    const SpacetimePoint x{0.2, {0.5, -1.0, 2.0}}, y{-0.7, {-2.5, 0.3, 0.1}};
    const Matrix ex = evaluation_matrix(cfg, modes, x), ey = evaluation_matrix(cfg, modes, y);
    EXPECT_LT((ks(x, y) - kernel_braket(ex, ey)).norm(), 1e-12);
    EXPECT_LT((kernel_mode_sum(cfg, x, y) - ks(x, y)).norm(), 1e-15);
  }
}

TEST(DiracBox, MasslessDiagonal) {
  const KernelSum ks(kMassless);
  const DiagonalForm d = diagonal_form(ks(SpacetimePoint{}, SpacetimePoint{}));
  EXPECT_NEAR(d.alpha, -80.0 / (32.0 * kPi * std::pow(kPi, 3)), 1e-14);
  EXPECT_LT(d.rel_residual, 1e-12);
}

TEST(DiracBox, RegularAtEveryPoint) {
  const auto modes = momentum_modes(kMassive);
  std::vector<SpacetimePoint> pts;
  Random rng(18);
  for (int i = 0; i < 6; ++i) {
    pts.push_back({rng.uniform(-2, 2), {rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
                                        rng.uniform(-kPi, kPi)}});
  }
  for (const auto& op : build_correlation_map(kMassive, modes, pts, true)) {
    EXPECT_TRUE(core::is_regular(op));
  }
}

TEST(DiracBox, PeriodicReduction) {
  const SpacetimePoint p{1.0, {kPi + 0.5, -kPi - 0.25, 0.0}};
  const SpacetimePoint r = p.reduced(kPi);
  EXPECT_NEAR(r.x[0], -kPi + 0.5, 1e-14);
  EXPECT_NEAR(r.x[1], kPi - 0.25, 1e-14);
  const KernelSum ks(kMassive);
  EXPECT_LT((ks(SpacetimePoint{}, p) - ks(SpacetimePoint{}, r)).norm(), 1e-12);
}
