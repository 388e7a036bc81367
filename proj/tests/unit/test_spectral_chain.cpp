#include <cmath>

#include "cfsgauge/dirac_box.hpp"
#include "cfsgauge/spectral_closed_chain.hpp"
#include "common.hpp"

using namespace cfsgauge;
using namespace cfsgauge::chain;

namespace {

VectorKernel random_kernel(Random& rng) {
  VectorKernel vk;
  for (int k = 0; k < 4; ++k) vk.u(k) = rng.normal(), vk.zeta(k) = rng.normal();
  return vk;
}

// u timelike and dominant, so both eigenvalues sit near u^2 > 0
VectorKernel right_half_plane_kernel(Random& rng) {
  VectorKernel vk;
  vk.u << rng.uniform(1.0, 2.0), 0.3 * rng.normal(), 0.3 * rng.normal(), 0.3 * rng.normal();
  for (int k = 0; k < 4; ++k) vk.zeta(k) = 0.3 * rng.normal();
  return vk;
}

}  // namespace

TEST(Chain, SlashSquaresToMinkowskiNorm) {
  testutil::for_seeds(10, 1200, [](Random& rng) {
    Vec4 v;
    for (int k = 0; k < 4; ++k) v(k) = rng.normal();
    EXPECT_LT((slash(v) * slash(v) - minkowski(v, v) * Matrix4::Identity()).norm(), 1e-13);
  });
}

TEST(Chain, EigenvaluesMatchNumeric) {
  testutil::for_seeds(50, 1300, [](Random& rng) {
    const VectorKernel vk = random_kernel(rng);
    const Matrix4 a = chain_from_uv(vk);
    EXPECT_LT((a - kernel_matrix(vk) * kernel_adjoint(vk)).norm(), 1e-13);
    const ChainEigenvalues ev = chain_eigenvalues(vk);
    // A - lambda_+ and A - lambda_- annihilate each other: minimal polynomial of degree 2
    const Matrix4 id = Matrix4::Identity();
    EXPECT_LT(((a - ev.plus * id) * (a - ev.minus * id)).norm(), 1e-11 * (1.0 + a.squaredNorm()));
    EXPECT_LT(std::abs(a.trace() - 2.0 * (ev.plus + ev.minus)), 1e-12 * (1.0 + a.norm()));
  });
}

TEST(Chain, ProjectorsAndDegeneracy) {
  testutil::for_seeds(30, 1400, [](Random& rng) {
    const VectorKernel vk = random_kernel(rng);
    const Projectors p = spectral_projectors(vk);
    EXPECT_LT((p.plus * p.plus - p.plus).norm(), 1e-10);
    EXPECT_LT((p.plus * p.minus).norm(), 1e-10);
    EXPECT_LT(std::abs(p.plus.trace() - 2.0), 1e-10);
  });
  VectorKernel pure;
  pure.u << 1.0, 0.2, 0.0, 0.0;
  EXPECT_TRUE(is_degenerate(chain_eigenvalues(pure)));
  EXPECT_ERRC(spectral_projectors(pure), Errc::degenerate_chain);
}

TEST(Chain, InverseSqrtRoutes) {
  testutil::for_seeds(40, 1500, [](Random& rng) {
    const VectorKernel vk = right_half_plane_kernel(rng);
    const Matrix4 r = inv_sqrt_chain(vk);
    EXPECT_LT((r * r * chain_from_uv(vk) - Matrix4::Identity()).norm(), 1e-11);
    const InvSqrtTimesP d = inv_sqrt_chain_times_P(vk);
    EXPECT_LT(d.rederived_deviation, 1e-10);
    EXPECT_LT(d.unitarity_residual, 1e-10);
    EXPECT_LT(spinor_unitarity_residual(box::gamma_matrices().gamma[0] * d.spectral), 1e-10);
  });
  VectorKernel spacelike;
  spacelike.u << 0.0, 1.0, 0.0, 0.0;
  EXPECT_ERRC(inv_sqrt_chain(spacelike), Errc::branch_cut);
}

TEST(Chain, TypesetFormReportsDeviation) {
  // with u . zeta != 0 the displayed coefficients do not reproduce the spectral route
  VectorKernel vk;
  vk.u << 1.5, 0.2, -0.1, 0.3;
  vk.zeta << 0.3, 0.1, 0.2, -0.2;
  const InvSqrtTimesP d = inv_sqrt_chain_times_P(vk);
  EXPECT_TRUE(std::isfinite(d.typeset_deviation));
  EXPECT_GT(d.typeset_deviation, 1e-6);
  EXPECT_LT(d.rederived_deviation, 1e-12);
}

TEST(Chain, ExtractionRoundTrip) {
  testutil::for_seeds(10, 1600, [](Random& rng) {
    const VectorKernel vk = random_kernel(rng);
    const Extraction ex = extract_vector_kernel(kernel_matrix(vk));
    EXPECT_LT((ex.vk.u - vk.u).norm(), 1e-13);
    EXPECT_LT((ex.vk.zeta - vk.zeta).norm(), 1e-13);
    EXPECT_LT(ex.remainder, 1e-13);
  });
}

TEST(Chain, ExpansionFirstOrder) {
  testutil::for_seeds(5, 1700, [](Random& rng) {
    Vec4 u1, z1;
    for (int k = 0; k < 4; ++k) u1(k) = rng.normal(), z1(k) = rng.normal();
    for (const double alpha : {1.0, 2.0, -0.5}) {
      const ExpansionReport r = unitary_expansion(alpha, u1, z1, {0.01, 0.005, 0.0025});
      EXPECT_LT(r.zeroth_vs_sign, 1e-12);
      EXPECT_LT(r.fd_vs_homogeneous, 1e-6 / std::min(1.0, std::abs(alpha)));
      if (alpha == 1.0) EXPECT_LT(r.fd_vs_typeset, 1e-6);
      for (const double q : r.ratios) {
        EXPECT_GT(q, 3.0);
        EXPECT_LT(q, 5.0);
      }
    }
  });
}

TEST(Chain, TypesetFormAgreesWhenOrthogonal) {
  VectorKernel vk;
  vk.u << 1.5, 0.2, 0.0, 0.0;
  vk.zeta << 0.0, 0.0, 0.3, -0.4;
  ASSERT_EQ(minkowski(vk.u, vk.zeta), 0.0);
  EXPECT_LT(inv_sqrt_chain_times_P(vk).typeset_deviation, 1e-12);
}
