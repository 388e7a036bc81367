#include "cfsgauge/dirac_box.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cfsgauge/error.hpp"
#include "cfsgauge/parallel.hpp"

namespace cfsgauge::box {

namespace {

constexpr double kPi = std::numbers::pi;

Complex phase(const MomentumMode& mode, const SpacetimePoint& x) {
  // e^{-ikx} with k^0 = -omega and kx = k^0 t - kvec . xvec
  const double arg = mode.omega * x.t + mode.k[0] * x.x[0] + mode.k[1] * x.x[1] + mode.k[2] * x.x[2];
  return {std::cos(arg), std::sin(arg)};
}

Matrix4 mode_slash(const MomentumMode& mode) {
  return slash(-mode.omega, mode.k[0], mode.k[1], mode.k[2]);
}

Vector4 unit_spinor(int index) {
  Vector4 e = Vector4::Zero();
  e(index) = 1.0;
  return e;
}

Vector4 wave_amplitude(const BoxConfig& cfg, const MomentumMode& mode) {
  const Matrix4 op = mode_slash(mode) + cfg.m * Matrix4::Identity();
  const double norm =
      4.0 * std::pow(cfg.L, 1.5) * std::sqrt(2.0 * kPi * mode.omega * (mode.omega + cfg.m));
  return op * unit_spinor(mode.a + 1) / norm;
}

}  // namespace

void BoxConfig::validate() const {
  if (!(std::isfinite(L) && L > 0.0)) fail(Errc::invalid_box, "L must be positive");
  if (!(std::isfinite(eps) && eps > 0.0)) fail(Errc::invalid_box, "eps must be positive");
  if (!(std::isfinite(m) && m >= 0.0)) fail(Errc::invalid_box, "m must be non-negative");
}

SpacetimePoint SpacetimePoint::reduced(double L) const {
  SpacetimePoint out = *this;
  for (double& c : out.x) {
    c = c - 2.0 * L * std::floor((c + L) / (2.0 * L));
    if (c >= L) c -= 2.0 * L;
  }
  return out;
}

const GammaMatrices& gamma_matrices() {
  static const GammaMatrices g = [] {
    GammaMatrices out;
    const Complex i = kI;
    Eigen::Matrix2cd sigma[3];
    sigma[0] << 0, 1, 1, 0;
    sigma[1] << 0, -i, i, 0;
    sigma[2] << 1, 0, 0, -1;
    out.gamma[0] = Matrix4::Zero();
    out.gamma[0].diagonal() << 1, 1, -1, -1;
    for (int a = 0; a < 3; ++a) {
      Matrix4 m = Matrix4::Zero();
      m.topRightCorner<2, 2>() = sigma[a];
      m.bottomLeftCorner<2, 2>() = -sigma[a];
      out.gamma[a + 1] = m;
    }
    out.gram = out.gamma[0];
    return out;
  }();
  return g;
}

Matrix4 slash(double k0, double k1, double k2, double k3) {
  const auto& g = gamma_matrices().gamma;
  return k0 * g[0] - k1 * g[1] - k2 * g[2] - k3 * g[3];
}

std::vector<std::array<int, 3>> lattice_momenta(const BoxConfig& cfg) {
  cfg.validate();
  const double scale = kPi / cfg.L;
  const double cutoff_sq = 1.0 / (cfg.eps * cfg.eps);
  const int bound = static_cast<int>(std::ceil(cfg.L / (kPi * cfg.eps))) + 1;
  std::vector<std::array<int, 3>> out;
  for (int n1 = -bound; n1 <= bound; ++n1) {
    for (int n2 = -bound; n2 <= bound; ++n2) {
      for (int n3 = -bound; n3 <= bound; ++n3) {
        const int nn = n1 * n1 + n2 * n2 + n3 * n3;
        if (nn == 0 && cfg.m == 0.0) continue;
        const double omega_sq = scale * scale * nn + cfg.m * cfg.m;
        if (omega_sq < cutoff_sq) out.push_back({n1, n2, n3});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const int na = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
    const int nb = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
    if (na != nb) return na < nb;
    return a < b;
  });
  return out;
}

std::vector<MomentumMode> momentum_modes(const BoxConfig& cfg) {
  const auto lattice = lattice_momenta(cfg);
  if (lattice.empty()) fail(Errc::empty_cutoff, "no lattice momentum below the cutoff 1/eps");
  const double scale = kPi / cfg.L;
  std::vector<MomentumMode> modes;
  modes.reserve(2 * lattice.size());
  for (const auto& n : lattice) {
    MomentumMode mode;
    mode.n = n;
    for (int i = 0; i < 3; ++i) mode.k[i] = scale * n[i];
    mode.omega = std::sqrt(mode.k[0] * mode.k[0] + mode.k[1] * mode.k[1] + mode.k[2] * mode.k[2] +
                           cfg.m * cfg.m);
    for (int a = 1; a <= 2; ++a) {
      mode.a = a;
      modes.push_back(mode);
    }
  }
  return modes;
}

double asymptotic_dimension(const BoxConfig& cfg) {
  return 8.0 / (3.0 * kPi * kPi) * std::pow(cfg.L / cfg.eps, 3);
}

std::array<Vector4, 2> chi_spinors(const MomentumMode& mode, double m) {
  if (!(m > 0.0)) fail(Errc::massless_normalization, "spinor normalization needs m > 0");
  const Matrix4& g0 = gamma_matrices().gram;
  const Matrix4 op = mode_slash(mode) + m * Matrix4::Identity();
  const double norm = std::sqrt(2.0 * m * (mode.omega + m));
  std::array<Vector4, 2> chi{op * unit_spinor(2) / norm, op * unit_spinor(3) / norm};
  auto spin_product = [&](const Vector4& u, const Vector4& v) { return (u.adjoint() * g0 * v)(0); };
  // Gram-Schmidt for the negative definite spin product on the solution space
  chi[0] /= std::sqrt(-spin_product(chi[0], chi[0]).real());
  chi[1] += spin_product(chi[0], chi[1]) * chi[0];
  chi[1] /= std::sqrt(-spin_product(chi[1], chi[1]).real());
  return chi;
}

Vector4 plane_wave(const BoxConfig& cfg, const MomentumMode& mode, const SpacetimePoint& x) {
  const auto chi = chi_spinors(mode, cfg.m);
  const double c = std::sqrt(cfg.m / (kPi * mode.omega)) / (4.0 * std::pow(cfg.L, 1.5));
  return c * phase(mode, x) * chi[static_cast<std::size_t>(mode.a - 1)];
}

Vector4 normalized_wave(const BoxConfig& cfg, const MomentumMode& mode, const SpacetimePoint& x) {
  return phase(mode, x) * wave_amplitude(cfg, mode);
}

Matrix evaluation_matrix(const BoxConfig& cfg, const std::vector<MomentumMode>& modes,
                         const SpacetimePoint& x) {
  Matrix e(4, static_cast<Eigen::Index>(modes.size()));
  for (std::size_t j = 0; j < modes.size(); ++j) {
    e.col(static_cast<Eigen::Index>(j)) = normalized_wave(cfg, modes[j], x);
  }
  return e;
}

Complex analytic_scalar_product(const BoxConfig& cfg, const MomentumMode& a,
                                const MomentumMode& b) {
  if (a.n != b.n) return 0.0;
  const SpacetimePoint origin;
  const Vector4 u = normalized_wave(cfg, a, origin);
  const Vector4 v = normalized_wave(cfg, b, origin);
  return 2.0 * kPi * std::pow(2.0 * cfg.L, 3) * u.dot(v);
}

std::vector<core::CorrelationOperator> build_correlation_map(
    const BoxConfig& cfg, const std::vector<MomentumMode>& modes,
    const std::vector<SpacetimePoint>& points, bool parallel) {
  if (modes.size() < 4) {
    fail(Errc::too_few_modes, "f = " + std::to_string(modes.size()) + " < 4");
  }
  std::vector<core::CorrelationOperator> out(points.size());
  parallel_for(
      points.size(),
      [&](std::size_t i) {
        const Matrix e = evaluation_matrix(cfg, modes, points[i]);
        out[i] = core::CorrelationOperator(core::local_correlation(e, gamma_matrices().gram), 2);
      },
      parallel);
  return out;
}

KernelSum::KernelSum(const BoxConfig& cfg) : m_(cfg.m) {
  const double scale = kPi / cfg.L;
  const double volume = 32.0 * kPi * cfg.L * cfg.L * cfg.L;
  for (const auto& n : lattice_momenta(cfg)) {
    const double k1 = scale * n[0];
    const double k2 = scale * n[1];
    const double k3 = scale * n[2];
    const double omega = std::sqrt(k1 * k1 + k2 * k2 + k3 * k3 + cfg.m * cfg.m);
    table_.push_back(1.0 / (volume * omega), -omega, k1, k2, k3);
  }
}

simd::ModeSums KernelSum::sums(const SpacetimePoint& x, const SpacetimePoint& y) const {
  const double dx[3] = {x.x[0] - y.x[0], x.x[1] - y.x[1], x.x[2] - y.x[2]};
  return simd::mode_sum(table_, x.t - y.t, dx);
}

Matrix4 KernelSum::assemble(const simd::ModeSums& s) const {
  const auto& g = gamma_matrices().gamma;
  return s.vector[0] * g[0] - s.vector[1] * g[1] - s.vector[2] * g[2] - s.vector[3] * g[3] +
         m_ * s.scalar * Matrix4::Identity();
}

Matrix4 KernelSum::operator()(const SpacetimePoint& x, const SpacetimePoint& y) const {
  return assemble(sums(x, y));
}

Matrix4 kernel_mode_sum(const BoxConfig& cfg, const SpacetimePoint& x, const SpacetimePoint& y) {
  return KernelSum(cfg)(x, y);
}

Matrix4 kernel_braket(const Matrix& e_x, const Matrix& e_y) {
  return -(e_x * e_y.adjoint() * gamma_matrices().gram);
}

DiagonalForm diagonal_form(const Matrix4& p_xx) {
  const Matrix4& g0 = gamma_matrices().gram;
  DiagonalForm out;
  out.alpha = (g0 * p_xx).trace().real() / 4.0;
  const double scale = std::abs(out.alpha) * g0.norm();
  const double rest = (p_xx - out.alpha * g0).norm();
  out.rel_residual = scale > 0.0 ? rest / scale : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace cfsgauge::box
