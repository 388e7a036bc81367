#include "cfsgauge/experiment/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cfsgauge/cfs_core.hpp"
#include "cfsgauge/error.hpp"
#include "cfsgauge/gauge_fix.hpp"
#include "cfsgauge/krein.hpp"
#include "cfsgauge/manifold.hpp"
#include "cfsgauge/parallel.hpp"
#include "cfsgauge/perturbation.hpp"

namespace cfsgauge::experiment {

using nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;

std::string sig_label(const Signature3& s) {
  return "(" + std::to_string(s.p) + "," + std::to_string(s.q) + "," + std::to_string(s.f) + ")";
}

// Nonzero eigenvalues of a 4x4 matrix matched greedily to an expected multiset;
// returns the largest mismatch relative to the largest expected magnitude.
double multiset_mismatch(const Matrix4& a, std::vector<Complex> expected) {
  Eigen::ComplexEigenSolver<Matrix4> es(a, false);
  double scale = 0.0;
  for (const Complex& e : expected) scale = std::max(scale, std::abs(e));
  scale = std::max(scale, 1e-300);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < 4; ++i) {
    const Complex v = es.eigenvalues()(i);
    auto best = expected.begin();
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      if (std::abs(*it - v) < std::abs(*best - v)) best = it;
    }
    worst = std::max(worst, std::abs(*best - v) / scale);
    expected.erase(best);
  }
  return worst;
}

box::SpacetimePoint random_point(Random& rng, double L) {
  box::SpacetimePoint p;
  p.t = rng.uniform(-1.0, 1.0);
  for (double& c : p.x) c = rng.uniform(-L, L);
  return p;
}

box::SpacetimePoint nudged(Random& rng, const box::SpacetimePoint& x, double size, double L) {
  box::SpacetimePoint p = x;
  p.t += rng.uniform(-size, size);
  for (double& c : p.x) c += rng.uniform(-size, size);
  return p.reduced(L);
}

Matrix random_krein_gram(Random& rng, int p, int q) {
  RealVector d(p + q);
  for (int i = 0; i < p + q; ++i) d(i) = (i < p ? 1.0 : -1.0) * rng.uniform(1.0, 2.0);
  const Matrix w = rng.unitary(p + q);
  return w * d.cast<Complex>().asDiagonal() * w.adjoint();
}

// Realization of a wave map psi(x) + delta: a regular point near x.
core::CorrelationOperator nearby_point(Random& rng, const manifold::ChartFrame& frame,
                                       double size) {
  const Matrix psi = frame.base().psi + rng.with_norm(frame.r(), frame.f(), size);
  return core::CorrelationOperator(psi.adjoint() * frame.X() * psi, frame.p(), frame.q());
}

Matrix4 gamma0() { return box::gamma_matrices().gamma[0]; }

std::vector<box::SpacetimePoint> first_points(const std::vector<box::SpacetimePoint>& pts,
                                              std::size_t n) {
  return {pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(std::min(n, pts.size()))};
}

}  // namespace

box::BoxConfig massless_variant(const box::BoxConfig& cfg) {
  box::BoxConfig out = cfg;
  out.m = 0.0;
  return out;
}

bool suite_dimension(Report& rep, Random& rng, const std::vector<Signature3>& cases,
                     const Tolerances& tol) {
  bool ok = true;
  for (const auto& s : cases) {
    const std::string label = sig_label(s);
    const manifold::ChartFrame frame(
        core::CorrelationOperator(rng.regular_operator(s.f, s.p, s.q), s.p, s.q), tol);
    const int expected = manifold::manifold_dim(s.p, s.q, s.f);
    const RealMatrix j_fd = manifold::chart_jacobian_fd(frame, frame.zero());
    const RealMatrix j = manifold::chart_jacobian(frame, frame.zero());
    const RealMatrix j_real = manifold::realization_jacobian(frame);
    ok &= rep.equal("jacobian_rank_fd " + label, "manifold dimension 2(p+q)f-(p+q)^2",
                    manifold::numeric_rank(j_fd, tol.jacobian_rank_rel), expected);
    ok &= rep.equal("jacobian_rank_analytic " + label, "manifold dimension 2(p+q)f-(p+q)^2",
                    manifold::numeric_rank(j, tol.jacobian_rank_rel), expected);
    ok &= rep.equal("realization_rank " + label,
                    "wave realization modulo the gauge group U(p,q)",
                    manifold::numeric_rank(j_real, tol.jacobian_rank_rel), expected);
    ok &= rep.at_most("jacobian_fd_vs_analytic " + label, "chart differential",
                      (j_fd - j).norm() / std::max(1.0, j.norm()), 1e-7);
    rep.value("dim " + label, expected);
  }
  return ok;
}

bool suite_chart_roundtrip(Report& rep, Random& rng, const std::vector<Signature3>& cases,
                           int trials, const Tolerances& tol) {
  bool ok = true;
  for (const auto& s : cases) {
    const std::string label = sig_label(s);
    const manifold::ChartFrame frame(
        core::CorrelationOperator(rng.regular_operator(s.f, s.p, s.q), s.p, s.q), tol);
    const int r = s.p + s.q;
    double worst = 0.0;
    double worst_signature = 0.0;
    for (int t = 0; t < trials; ++t) {
      // eigenvalues of X lie in [1, 3], so ||A||_op <= 0.3 stays in the chart domain
      manifold::ChartCoordinates c{rng.hermitian_with_norm(r, rng.uniform(0.01, 0.3)),
                                   rng.with_norm(r, s.f - r, rng.uniform(0.01, 1.0))};
      const core::CorrelationOperator y = manifold::chart_forward(frame, c);
      const manifold::ChartCoordinates back = manifold::chart_inverse(frame, y);
      worst = std::max(worst, std::max((back.A - c.A).norm(), (back.B - c.B).norm()));
      const Signature sg = core::correlation_signature(y.matrix, tol);
      worst_signature = std::max(worst_signature, (sg.positive == s.p && sg.negative == s.q) ? 0.0
                                                                                             : 1.0);
    }
    ok &= rep.at_most("chart_roundtrip " + label, "chart inverse recovers (A, B)", worst, 1e-9);
    ok &= rep.equal("chart_image_signature " + label, "chart lands in F^{p,q}", worst_signature,
                    0.0);
  }
  return ok;
}

bool suite_gaussian(Report& rep, Random& rng, const Signature3& sig, int pairs,
                    const Tolerances& tol) {
  const manifold::ChartFrame frame(
      core::CorrelationOperator(rng.regular_operator(sig.f, sig.p, sig.q), sig.p, sig.q), tol);
  const int r = sig.p + sig.q;
  const int dim = manifold::manifold_dim(sig.p, sig.q, sig.f);
  auto direction = [&] {
    RealVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = rng.normal();
    return manifold::unpack(v / v.norm(), r, sig.f);
  };
  const std::vector<double> t_list = {0.08, 0.04, 0.02, 0.01};
  double worst_c2 = 0.0;
  double ratio_lo = INFINITY;
  double ratio_hi = -INFINITY;
  for (int i = 0; i < pairs; ++i) {
    const manifold::ChartCoordinates a = direction();
    const manifold::ChartCoordinates b = direction();
    const manifold::GaussianReport g = manifold::gaussian_check(frame, a, b, t_list);
    worst_c2 = std::max(worst_c2, g.c2_rel_error);
    for (const double q : g.ratios) {
      ratio_lo = std::min(ratio_lo, q);
      ratio_hi = std::max(ratio_hi, q);
    }
  }
  bool ok = true;
  ok &= rep.at_most("gaussian_c2_rel_error", "D(t) = (||dA||^2 + 2||dB||^2) t^2 + O(t^4)",
                    worst_c2, 1e-8);
  ok &= rep.within("gaussian_ratio_min", "residual of D(t) is O(t^4)", ratio_lo, 12.0, 20.0);
  ok &= rep.within("gaussian_ratio_max", "residual of D(t) is O(t^4)", ratio_hi, 12.0, 20.0);
  const double grad = manifold::metric_gradient_at_origin(frame, 1e-4);
  ok &= rep.at_most("metric_gradient_at_origin", "metric constant to first order at x", grad,
                    1e-6);
  return ok;
}

bool suite_polar(Report& rep, Random& rng, int samples, const Tolerances& tol) {
  double res = 0.0, unit = 0.0, sym = 0.0, uniq = 0.0, series = 0.0, involution = 0.0;
  for (int i = 0; i < samples; ++i) {
    const int n = i % 2 == 0 ? 1 : 2;
    const krein::KreinSpace space(random_krein_gram(rng, n, n), n, n, tol);
    const int d = 2 * n;
    const Matrix id = Matrix::Identity(d, d);
    const Matrix u0 = krein::cayley_unitary(space, rng.hermitian_with_norm(d, rng.uniform(0.0, 1.0)));
    const Matrix s0 =
        id + space.gram_inverse() * rng.hermitian_with_norm(d, rng.uniform(0.0, 0.3));
    const Matrix a = u0 * s0;

    const krein::PolarDecomposition pd = krein::polar_decompose(space, a, tol);
    res = std::max(res, (a - pd.unitary * pd.symmetric).norm());
    unit = std::max(unit, space.unitarity_residual(pd.unitary));
    sym = std::max(sym, space.symmetry_residual(pd.symmetric));
    uniq = std::max(uniq, std::max((pd.unitary - u0).norm(), (pd.symmetric - s0).norm()));
    const Matrix x = rng.gaussian(d, d);
    const Matrix y = rng.gaussian(d, d);
    involution = std::max(
        involution, std::max((space.adjoint(space.adjoint(x)) - x).norm(),
                             (space.adjoint(x * y) - space.adjoint(y) * space.adjoint(x)).norm()) /
                        (x.norm() * std::max(1.0, y.norm())));

    const krein::SquareRoot eig = krein::principal_sqrt(s0, tol);
    const krein::SquareRoot ser = krein::sqrt_series(s0);
    series = std::max(series, std::max((eig.half - ser.half).norm(),
                                       (eig.inv_half - ser.inv_half).norm()));
  }
  bool ok = true;
  ok &= rep.at_most("polar_residual", "A = U S", res, 1e-8);
  ok &= rep.at_most("polar_unitarity", "U is Krein-unitary", unit, 1e-9);
  ok &= rep.at_most("polar_symmetry", "S is Krein-symmetric", sym, 1e-9);
  ok &= rep.at_most("polar_uniqueness", "polar decomposition near 1 is unique", uniq, 1e-8);
  ok &= rep.at_most("sqrt_series_vs_eigen", "binomial series equals principal root", series,
                    1e-9);
  ok &= rep.at_most("adjoint_involution", "Krein adjoint is an anti-involution", involution,
                    1e-12);
  rep.value("polar_samples", samples);
  return ok;
}

bool suite_wave_charts(Report& rep, Random& rng, const std::vector<int>& f_list, int samples,
                       const Tolerances& tol) {
  double coincide = 0.0, realize_res = 0.0, sym_res = 0.0, conn_res = 0.0, witness = 0.0;
  double gauge_res = 0.0, global = 0.0;
  int evaluated = 0, failures = 0, witness_missing = 0;
  for (const int f : f_list) {
    const manifold::ChartFrame frame(core::CorrelationOperator(rng.regular_operator(f, 2, 2), 2),
                                     tol);
    const krein::KreinSpace space = frame.base().spin.krein_space(tol);
    std::vector<core::CorrelationOperator> ys;
    for (int i = 0; i < samples; ++i) ys.push_back(nearby_point(rng, frame, rng.uniform(0.005, 0.03)));

    const gauge::CoincidenceReport cr = gauge::charts_coincide_check(frame, ys);
    coincide = std::max(coincide, cr.max_deviation);
    evaluated += cr.evaluated;
    failures += cr.domain_failures;

    for (const auto& y : ys) {
      const core::RegularPoint py(y, tol);
      const gauge::SymmetricChartValue v = gauge::symmetric_wave_chart(frame, py);
      realize_res = std::max(realize_res, (gauge::realize(frame, v.point).matrix - y.matrix).norm());
      sym_res = std::max(sym_res, space.symmetry_residual(v.point.psi_I));
      conn_res = std::max(conn_res, gauge::connecting_unitarity_residual(frame, py, v.connecting));

      const Matrix u = krein::cayley_unitary(space, rng.hermitian_with_norm(4, 0.5));
      const gauge::WaveChartPoint moved{u * v.point.psi_I, u * v.point.psi_J};
      const auto w = gauge::gauge_orbit_witness(frame, v.point, moved);
      if (w) {
        witness = std::max(witness, (*w - u).norm());
      } else {
        ++witness_missing;
      }
    }

    const gauge::CanonicalTarget target = gauge::canonical_target(frame.X());
    const krein::KreinSpace v_space(target.gram, tol);
    const Matrix g1 = krein::cayley_unitary(v_space, rng.hermitian_with_norm(4, 0.5));
    const Matrix g2 = krein::cayley_unitary(v_space, rng.hermitian_with_norm(4, 0.5));
    const gauge::GaugeMap m1 = gauge::build_gauge(frame, ys, g1 * target.u_x, target.gram);
    const gauge::GaugeMap m2 = gauge::build_gauge(frame, ys, g2 * target.u_x, target.gram);
    const Matrix w = g2 * g1.inverse();
    for (std::size_t i = 0; i < ys.size(); ++i) {
      gauge_res = std::max(gauge_res, m1.residuals[i]);
      global = std::max(global, (m2.values[i] - w * m1.values[i]).norm());
    }
  }
  bool ok = true;
  ok &= rep.at_most("chart_coincidence", "symmetric wave chart is the Gaussian wave chart",
                    coincide, 1e-8);
  ok &= rep.equal("chart_coincidence_domain_failures", "samples lie in the chart domain",
                  failures, 0.0);
  ok &= rep.at_most("symmetric_chart_realization", "R(phi(y)) = y", realize_res, 1e-9);
  ok &= rep.at_most("symmetric_chart_symmetry", "S_x component is Krein-symmetric", sym_res,
                    1e-9);
  ok &= rep.at_most("connecting_unitarity", "U_xy is a Krein isometry S_y -> S_x", conn_res,
                    1e-9);
  ok &= rep.at_most("gauge_orbit_witness", "equal realizations differ by a unitary", witness,
                    1e-9);
  ok &= rep.equal("gauge_orbit_witness_missing", "equal realizations differ by a unitary",
                  witness_missing, 0.0);
  ok &= rep.at_most("gauge_condition", "y = -Psi_V(y)^* Psi_V(y)", gauge_res, 1e-9);
  ok &= rep.at_most("gauge_global_freedom", "gauge fixed up to one global unitary", global, 1e-9);
  rep.value("coincidence_evaluated", evaluated);
  return ok;
}

bool suite_box_modes(Report& rep, const box::BoxConfig& cfg) {
  const std::size_t f = box::momentum_modes(cfg).size();
  // independent recount over a cube that contains the cutoff ball
  const int n_max = static_cast<int>(std::ceil(cfg.L / (kPi * cfg.eps))) + 1;
  long long brute = 0;
  const double cut = 1.0 / (cfg.eps * cfg.eps);
  for (int a = -n_max; a <= n_max; ++a) {
    for (int b = -n_max; b <= n_max; ++b) {
      for (int c = -n_max; c <= n_max; ++c) {
        if (cfg.m == 0.0 && a == 0 && b == 0 && c == 0) continue;
        const double k2 = (kPi / cfg.L) * (kPi / cfg.L) * (a * a + b * b + c * c);
        if (k2 + cfg.m * cfg.m < cut) brute += 2;
      }
    }
  }
  bool ok = rep.equal("mode_count", "two polarizations per lattice momentum below the cutoff",
                      static_cast<double>(f), static_cast<double>(brute));
  rep.value("f", f);
  rep.value("lattice_points", f / 2);
  rep.value("asymptotic_dimension", box::asymptotic_dimension(cfg));
  return ok;
}

bool suite_box_asymptotics(Report& rep, double L, const std::vector<double>& l_over_eps) {
  bool ok = true;
  double prev = INFINITY;
  for (std::size_t i = 0; i < l_over_eps.size(); ++i) {
    const box::BoxConfig cfg{L, L / l_over_eps[i], 0.0};
    const double f = static_cast<double>(box::momentum_modes(cfg).size());
    const double dev = std::abs(f / box::asymptotic_dimension(cfg) - 1.0);
    const std::string label = std::to_string(static_cast<int>(std::lround(l_over_eps[i])));
    rep.value("asymptotic_ratio L/eps=" + label, f / box::asymptotic_dimension(cfg));
    if (i == 0) {
      ok &= rep.at_most("asymptotic_deviation L/eps=" + label,
                        "f ~ (8 / 3 pi^2) (L / eps)^3", dev, 0.25);
    } else {
      ok &= rep.equal("asymptotic_improves L/eps=" + label, "f ~ (8 / 3 pi^2) (L / eps)^3",
                      dev < prev ? 1.0 : 0.0, 1.0);
    }
    prev = dev;
  }
  return ok;
}

bool suite_box_regularity(Report& rep, const box::BoxConfig& cfg,
                          const std::vector<box::SpacetimePoint>& points, const Tolerances& tol,
                          bool parallel) {
  const auto modes = box::momentum_modes(cfg);
  const auto ops = box::build_correlation_map(cfg, modes, points, parallel);
  std::vector<int> regular(ops.size(), 0);
  parallel_for(ops.size(), [&](std::size_t i) { regular[i] = core::is_regular(ops[i], tol); },
               parallel);
  const int count = static_cast<int>(std::count(regular.begin(), regular.end(), 1));
  rep.value("regular_points", count);
  return rep.equal("regularity", "F(x) has rank 4 and signature (2,2) when f >= 4", count,
                   static_cast<double>(points.size()));
}

bool suite_box_kernel(Report& rep, const box::BoxConfig& cfg,
                      const std::vector<box::SpacetimePoint>& points, const Tolerances& tol) {
  const auto modes = box::momentum_modes(cfg);
  const box::KernelSum ks(cfg);
  const auto pts = first_points(points, 8);
  std::vector<Matrix> e;
  for (const auto& p : pts) e.push_back(box::evaluation_matrix(cfg, modes, p));
  double worst = 0.0, adjoint = 0.0;
  const Matrix4 g0 = gamma0();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const Matrix4 p = ks(pts[i], pts[j]);
      worst = std::max(worst, (p - box::kernel_braket(e[i], e[j])).norm());
      adjoint = std::max(adjoint, (ks(pts[j], pts[i]) - g0 * p.adjoint() * g0).norm());
    }
  }
  bool ok = true;
  ok &= rep.at_most("kernel_modesum_vs_braket", "P(x,y) = -Psi(x) Psi(y)^*", worst, 1e-10);
  ok &= rep.at_most("kernel_adjoint", "P(y,x) = P(x,y)^*", adjoint, 1e-12);

  const box::BoxConfig ml = massless_variant(cfg);
  const box::KernelSum ks0(ml);
  const auto modes0 = box::momentum_modes(ml);
  const double n = static_cast<double>(ks0.lattice_points());
  const Matrix4 expected = -n / (32.0 * kPi * std::pow(ml.L, 3)) * g0;
  double diag = 0.0;
  for (const auto& p : pts) {
    const Matrix e0 = box::evaluation_matrix(ml, modes0, p);
    diag = std::max(diag, (ks0(p, p) - expected).norm());
    diag = std::max(diag, (box::kernel_braket(e0, e0) - expected).norm());
  }
  ok &= rep.at_most("massless_diagonal", "P(x,x) = -N / (32 pi L^3) gamma^0 for m = 0", diag,
                    1e-10);
  rep.value("massless_alpha", -n / (32.0 * kPi * std::pow(ml.L, 3)));
  if (cfg.m > 0.0) {
    const box::DiagonalForm df = box::diagonal_form(ks(pts[0], pts[0]));
    rep.value("massive_diagonal_rel_residual", df.rel_residual);
  }
  (void)tol;
  return ok;
}

bool suite_box_gauge(Report& rep, Random& rng, const box::BoxConfig& cfg,
                     const std::vector<box::SpacetimePoint>& points, const Tolerances& tol,
                     bool parallel) {
  const auto modes = box::momentum_modes(cfg);
  const auto ops = box::build_correlation_map(cfg, modes, points, parallel);
  const manifold::ChartFrame frame(ops[0], tol);
  std::vector<core::CorrelationOperator> in_domain;
  std::vector<int> ok_flags(ops.size(), 0);
  parallel_for(
      ops.size(),
      [&](std::size_t i) {
        try {
          gauge::symmetric_wave_chart(frame, core::RegularPoint(ops[i], tol));
          ok_flags[i] = 1;
        } catch (const Error& e) {
          if (e.code() != Errc::out_of_chart_domain) throw;
        }
      },
      parallel);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ok_flags[i]) in_domain.push_back(ops[i]);
  }
  const gauge::CanonicalTarget target = gauge::canonical_target(frame.X());
  const krein::KreinSpace v_space(target.gram, tol);
  const Matrix g = krein::cayley_unitary(v_space, rng.hermitian_with_norm(4, 0.5));
  const gauge::GaugeMap map = gauge::build_gauge(frame, in_domain, g * target.u_x, target.gram,
                                                 parallel);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < in_domain.size(); ++i) {
    worst = std::max(worst, map.residuals[i]);
    scale = std::max(scale, in_domain[i].matrix.norm());
  }
  rep.value("gauge_points", ops.size());
  rep.value("gauge_domain_failures", ops.size() - in_domain.size());
  bool ok = rep.equal("gauge_base_in_domain", "x lies in its own symmetric wave chart",
                      ok_flags[0], 1.0);
  ok &= rep.at_most("box_gauge_condition", "y = -Psi_V(y)^* Psi_V(y)",
                    worst / std::max(scale, 1e-300), 1e-9);
  return ok;
}

bool suite_chain_spectra(Report& rep, Random& rng, int samples, const Tolerances& tol) {
  double eig = 0.0, proj = 0.0;
  for (int i = 0; i < samples; ++i) {
    chain::VectorKernel vk;
    for (int k = 0; k < 4; ++k) vk.u(k) = rng.normal();
    for (int k = 0; k < 4; ++k) vk.zeta(k) = rng.normal();
    const Matrix4 a = chain::chain_from_uv(vk);
    const chain::ChainEigenvalues ev = chain::chain_eigenvalues(vk);
    eig = std::max(eig, multiset_mismatch(a, {ev.plus, ev.plus, ev.minus, ev.minus}));
    const chain::Projectors pr = chain::spectral_projectors(vk, tol);
    const Matrix4 id = Matrix4::Identity();
    const double r = std::max(
        {(pr.plus * pr.plus - pr.plus).norm(), (pr.minus * pr.minus - pr.minus).norm(),
         (pr.plus * pr.minus).norm(), (pr.plus + pr.minus - id).norm(),
         (a - ev.plus * pr.plus - ev.minus * pr.minus).norm() / std::max(1.0, a.norm()),
         std::abs(pr.plus.trace() - 2.0)});
    proj = std::max(proj, r / std::max(1.0, pr.plus.squaredNorm()));
  }
  bool ok = true;
  ok &= rep.at_most("chain_eigenvalues", "lambda_+- with multiplicity 2", eig, 1e-9);
  ok &= rep.at_most("chain_projectors", "spectral projectors of the closed chain", proj, 1e-9);

  // dual route: samples with both eigenvalues in the right half plane
  std::vector<double> typeset;
  double rederived = 0.0, unitarity = 0.0;
  int typeset_nonfinite = 0;
  for (int i = 0; i < samples; ++i) {
    chain::VectorKernel vk;
    vk.u << rng.uniform(1.0, 2.0), 0.3 * rng.normal(), 0.3 * rng.normal(), 0.3 * rng.normal();
    for (int k = 0; k < 4; ++k) vk.zeta(k) = 0.3 * rng.normal();
    const chain::InvSqrtTimesP r = chain::inv_sqrt_chain_times_P(vk, tol);
    rederived = std::max(rederived, r.rederived_deviation);
    unitarity = std::max(unitarity, r.unitarity_residual);
    if (std::isfinite(r.typeset_deviation)) {
      typeset.push_back(r.typeset_deviation);
    } else {
      ++typeset_nonfinite;
    }
  }
  std::sort(typeset.begin(), typeset.end());
  ok &= rep.at_most("inv_sqrt_unitarity", "gamma^0 A^{-1/2} P is unitary", unitarity, 1e-9);
  ok &= rep.at_most("inv_sqrt_rederived_form", "closed form of A^{-1/2} P (re-derived)",
                    rederived, 1e-9);
  ordered_json dual;
  dual["samples"] = samples;
  dual["typeset_nonfinite"] = typeset_nonfinite;
  dual["typeset_deviation_min"] = typeset.empty() ? ordered_json() : number_or_null(typeset.front());
  dual["typeset_deviation_median"] =
      typeset.empty() ? ordered_json() : number_or_null(typeset[typeset.size() / 2]);
  dual["typeset_deviation_max"] = typeset.empty() ? ordered_json() : number_or_null(typeset.back());
  dual["rederived_deviation_max"] = number_or_null(rederived);
  dual["spectral_unitarity_max"] = number_or_null(unitarity);
  rep.value("dual_route", dual);
  return ok;
}

bool suite_expansion(Report& rep, double alpha, const chain::Vec4& u1, const chain::Vec4& zeta1,
                     const Tolerances& tol) {
  const std::vector<double> tau = {0.02, 0.01, 0.005, 0.0025};
  const chain::ExpansionReport r = chain::unitary_expansion(alpha, u1, zeta1, tau, tol);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", alpha);
  const std::string label = std::string(" alpha=") + buf;
  bool ok = true;
  ok &= rep.at_most("expansion_zeroth" + label, "gamma^0 A^{-1/2} P -> sign(alpha)",
                    r.zeroth_vs_sign, 1e-10);
  ok &= rep.at_most("expansion_first_order" + label,
                    "first order (-gamma^0 (u1 . gamma) + i zeta1^0) / |alpha|",
                    r.fd_vs_homogeneous, 1e-6);
  if (alpha == 1.0) {
    ok &= rep.at_most("expansion_first_order_typeset" + label,
                      "first order -gamma^0 (u1 . gamma) + i zeta1^0 / |alpha|", r.fd_vs_typeset,
                      1e-6);
  } else {
    rep.value("expansion_typeset_deviation" + label, number_or_null(r.fd_vs_typeset));
  }
  ok &= rep.at_most("expansion_antihermitian" + label, "first order is Krein anti-symmetric",
                    r.antisymmetry, 1e-6);
  double lo = INFINITY, hi = -INFINITY;
  for (const double q : r.ratios) {
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  ok &= rep.within("expansion_ratio_min" + label, "remainder is O(tau^2)", lo, 3.0, 5.0);
  ok &= rep.within("expansion_ratio_max" + label, "remainder is O(tau^2)", hi, 3.0, 5.0);
  return ok;
}

bool suite_isospectral(Report& rep, const box::BoxConfig& massless,
                       const std::vector<box::SpacetimePoint>& points, const Tolerances& tol) {
  const box::KernelSum ks(massless);
  const auto pts = first_points(points, 8);
  double remainder = 0.0, eig = 0.0;
  for (const auto& x : pts) {
    for (const auto& y : pts) {
      const Matrix4 p = ks(x, y);
      const chain::Extraction ex = chain::extract_vector_kernel(p);
      remainder = std::max(remainder, ex.remainder / std::max(p.norm(), 1e-300));
      const Matrix4 a = p * ks(y, x);
      const chain::ChainEigenvalues ev = chain::chain_eigenvalues(ex.vk);
      eig = std::max(eig, multiset_mismatch(a, {ev.plus, ev.plus, ev.minus, ev.minus}));
    }
  }
  (void)tol;
  bool ok = true;
  ok &= rep.at_most("massless_vector_form", "P = u-slash + i zeta-slash for m = 0", remainder,
                    1e-10);
  ok &= rep.at_most("massless_chain_spectrum", "closed chain eigenvalues from (u, zeta)", eig,
                    1e-9);
  return ok;
}

bool suite_perturbation(Report& rep, Random& rng, const box::BoxConfig& massless,
                        const std::vector<box::SpacetimePoint>& points, int gauge_functions,
                        const Tolerances& tol) {
  const auto modes = box::momentum_modes(massless);
  const double L = massless.L;
  const krein::KreinSpace spinor(Matrix(gamma0()), 2, 2, tol);

  const box::SpacetimePoint x0 = random_point(rng, L);
  const Matrix e0 = box::evaluation_matrix(massless, modes, x0);
  const Matrix4 u0 = krein::cayley_unitary(spinor, rng.hermitian_with_norm(4, 0.5));
  std::vector<box::SpacetimePoint> samples = first_points(points, 16);
  for (int i = 0; i < 4; ++i) samples.push_back(random_point(rng, L));
  const perturb::BasisWaves bw = perturb::basis_waves(massless, modes, x0, samples, tol);
  const Matrix4 basis0 = perturb::gauged_basis(e0, e0, u0, bw.chi, tol);

  double cancel = 0.0, same_f = 0.0, mixed = 0.0, basis_inv = 0.0, basis_route = 0.0;
  double phase = 0.0, chain_inv = 0.0, gauge_inv = 0.0;
  int bad_signature = 0;
  std::vector<Matrix> e_points;
  for (const auto& p : points) e_points.push_back(box::evaluation_matrix(massless, modes, p));

  for (int i = 0; i < gauge_functions; ++i) {
    const perturb::GaugeFunction lambda =
        perturb::GaugeFunction::random(rng, L, rng.uniform_int(1, 4), 1.0);
    const box::SpacetimePoint x = random_point(rng, L);
    const Matrix4 u = krein::cayley_unitary(spinor, rng.hermitian_with_norm(4, 0.5));
    const Matrix e = box::evaluation_matrix(massless, modes, x);
    const Matrix et = perturb::apply_local_phase(e, lambda(x));

    const Matrix g = perturb::perturbed_symmetric_gauge(e, e, u, tol);
    const Matrix gt = perturb::perturbed_symmetric_gauge(e, et, u, tol);
    cancel = std::max(cancel, (gt - g).norm());

    const core::CorrelationOperator ft = perturb::perturbed_correlation(et);
    const Matrix f = core::local_correlation(e, Matrix(gamma0()));
    same_f = std::max(same_f, (ft.matrix - f).norm());
    const Signature sg = core::correlation_signature(ft.matrix, tol);
    if (sg.positive != 2 || sg.negative != 2) ++bad_signature;

    for (std::size_t k = 0; k < points.size(); ++k) {
      const double l = lambda(points[k]);
      const Matrix4 pm = perturb::mixed_kernel(e_points[k], perturb::apply_local_phase(e_points[k], l));
      const Matrix4 pxx = box::kernel_braket(e_points[k], e_points[k]);
      mixed = std::max(mixed, (pm - Complex(std::cos(l), -std::sin(l)) * pxx).norm());
    }

    const Matrix et0 = perturb::apply_local_phase(e0, lambda(x0));
    const Matrix4 b = perturb::gauged_basis(e0, et0, u0, bw.chi, tol);
    basis_inv = std::max(basis_inv, (b - basis0).norm());
    basis_route = std::max(
        basis_route, (perturb::perturbed_symmetric_gauge(e0, et0, u0, tol) * bw.u - b).norm());

    std::vector<box::SpacetimePoint> ys;
    for (int k = 0; k < 3; ++k) ys.push_back(nudged(rng, x, 0.2, L));
    const perturb::TransformationLedger led =
        perturb::transformation_ledger(massless, modes, lambda, x, ys, u, tol);
    phase = std::max(phase, led.kernel_phase);
    chain_inv = std::max(chain_inv, led.chain_invariance);
    gauge_inv = std::max(gauge_inv, led.gauge_invariance);
  }

  // first-order consistency: e^{i s Lambda} E - E - i s Lambda E = O(s^2)
  const perturb::GaugeFunction lam = perturb::GaugeFunction::random(rng, L, 3, 1.0);
  const double l0 = lam(x0);
  auto first_order = [&](double s) {
    return (perturb::apply_local_phase(e0, s * l0) - e0 - kI * s * l0 * e0).norm();
  };
  const double ratio = first_order(1e-2) / first_order(5e-3);

  bool ok = true;
  ok &= rep.at_most("phase_cancellation", "symmetric wave gauge is unchanged by local phases",
                    cancel, 1e-9);
  ok &= rep.at_most("perturbed_correlation", "F~(x) = F(x) for a pure gauge", same_f, 1e-12);
  ok &= rep.equal("perturbed_signature", "F~(x) keeps signature (2,2)", bad_signature, 0.0);
  ok &= rep.at_most("mixed_kernel_phase", "P(x, F~(x)) = e^{-i Lambda(x)} P(x,x)", mixed,
                    1e-10);
  ok &= rep.at_most("ledger_kernel_phase", "P(x,y) -> e^{i Lambda(x) - i Lambda(y)} P(x,y)",
                    phase, 1e-9);
  ok &= rep.at_most("ledger_chain_invariance", "A_xy is gauge invariant", chain_inv, 1e-9);
  ok &= rep.at_most("ledger_gauge_invariance", "Psi_V is gauge invariant", gauge_inv, 1e-9);
  ok &= rep.at_most("basis_wave_reconstruction", "u_a(y) = P(y,x) chi_a",
                    bw.reconstruction_residual, 1e-9);
  ok &= rep.at_most("basis_wave_orthonormality", "u_a orthonormal in H",
                    bw.orthonormality_residual, 1e-9);
  ok &= rep.at_most("gauged_basis_invariance", "U_x gamma^0 A^{1/2} chi_a is gauge invariant",
                    basis_inv, 1e-9);
  ok &= rep.at_most("gauged_basis_routes", "Psi_V(x) u_a = U_x gamma^0 A^{1/2} chi_a",
                    basis_route, 1e-9);
  ok &= rep.within("phase_first_order_ratio", "local phase agrees with i Lambda to first order",
                   ratio, 3.0, 5.0);
  rep.value("gauge_functions", gauge_functions);
  rep.value("alpha", bw.alpha);
  return ok;
}

void run_task(const std::string& name, const ExperimentConfig& cfg, Random& rng, Report& rep,
              bool parallel) {
  const Tolerances& tol = cfg.tol;
  const int trials = cfg.trials;
  if (name == "dim-count") {
    suite_box_modes(rep, cfg.box);
    suite_box_asymptotics(rep, cfg.box.L, {8.0, 12.0});
    if (box::momentum_modes(cfg.box).size() >= 4) {
      suite_box_regularity(rep, cfg.box, cfg.points, tol, parallel);
    }
    suite_dimension(rep, rng, {{1, 1, 4}, {2, 2, 8}, {2, 2, 12}}, tol);
  } else if (name == "charts") {
    suite_chart_roundtrip(rep, rng, {{1, 1, 4}, {2, 2, 8}, {2, 2, 12}}, trials, tol);
    suite_gaussian(rep, rng, {2, 2, 8}, trials, tol);
  } else if (name == "gauge") {
    suite_polar(rep, rng, trials, tol);
    suite_wave_charts(rep, rng, {8, 12}, trials, tol);
    suite_box_gauge(rep, rng, cfg.box, cfg.points, tol, parallel);
  } else if (name == "spectral") {
    suite_box_kernel(rep, cfg.box, cfg.points, tol);
    suite_chain_spectra(rep, rng, trials, tol);
    chain::Vec4 u1, z1;
    for (int k = 0; k < 4; ++k) u1(k) = rng.normal();
    for (int k = 0; k < 4; ++k) z1(k) = rng.normal();
    suite_expansion(rep, 1.0, u1, z1, tol);
    suite_expansion(rep, -1.5, u1, z1, tol);
    suite_isospectral(rep, massless_variant(cfg.box), cfg.points, tol);
  } else if (name == "perturb") {
    suite_perturbation(rep, rng, massless_variant(cfg.box), first_points(cfg.points, 125), trials,
                       tol);
  } else {
    fail(Errc::task_error, "unknown task '" + name + "'");
  }
}

}  // namespace cfsgauge::experiment
