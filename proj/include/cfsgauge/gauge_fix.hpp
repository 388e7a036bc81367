#pragma once

#include <optional>
#include <vector>

#include "cfsgauge/cfs_core.hpp"
#include "cfsgauge/krein.hpp"
#include "cfsgauge/manifold.hpp"

// Wave charts and gauges around a base point x.
//
// Wave coordinates are maps psi : H -> S_x, written in the (I, J) splitting
// of the chart frame as psi = psi_I basis_I^dagger + psi_J basis_J^dagger.
// The realization R(psi) = -psi^* psi = psi^dagger X psi recovers a point of
// F^{p,q}; it is invariant under psi -> U psi for Krein-unitary U.
namespace cfsgauge::gauge {

struct WaveChartPoint {
  Matrix psi_I;  // r x r
  Matrix psi_J;  // r x (f-r)
};

Matrix ambient(const manifold::ChartFrame& frame, const WaveChartPoint& w);
WaveChartPoint split(const manifold::ChartFrame& frame, const Matrix& psi);

// Identity on I, zero on J: the wave evaluation of x itself.
WaveChartPoint base_wave(const manifold::ChartFrame& frame);

core::CorrelationOperator realize(const manifold::ChartFrame& frame, const WaveChartPoint& w);
// -psi^dagger G psi for a map psi : H -> V into a space with Gram matrix G.
Matrix realize_map(const Matrix& psi, const Matrix& target_gram);

// U with w_tilde = U w if both realize to the same point (relative tolerance
// tol_sqrt); std::nullopt otherwise. Throws NotInvertible if psi_I is singular.
std::optional<Matrix> gauge_orbit_witness(const manifold::ChartFrame& frame,
                                          const WaveChartPoint& w,
                                          const WaveChartPoint& w_tilde);

// (S, U^{-1} psi_J) from the Krein polar decomposition psi_I = U S.
WaveChartPoint symmetrize(const manifold::ChartFrame& frame, const WaveChartPoint& w);

struct SymmetricChartValue {
  WaveChartPoint point;
  Matrix psi;         // ambient r x f form of point
  Matrix connecting;  // U_{x,y} : S_y -> S_x
  bool series_only = false;
};

// phi(y) = (X^{-1} A_xy X^{-1})^{-1/2} X^{-1} P(x,y) Psi(y). Square-root and
// inverse failures are rethrown as OutOfChartDomain.
SymmetricChartValue symmetric_wave_chart(const manifold::ChartFrame& frame,
                                         const core::RegularPoint& y);

// Residual ||U^dagger G_x U - G_y|| of the connecting operator U_{x,y}.
double connecting_unitarity_residual(const manifold::ChartFrame& frame,
                                     const core::RegularPoint& y, const Matrix& connecting);

// (sqrt(1 + X^{-1} A), (1 + X^{-1} A)^{-1/2} X^{-1} B); requires
// ||X^{-1} A|| < radius_series.
WaveChartPoint gaussian_wave_map(const manifold::ChartFrame& frame,
                                 const manifold::ChartCoordinates& c);

struct CoincidenceReport {
  double max_deviation = 0.0;
  int evaluated = 0;
  int domain_failures = 0;
};

CoincidenceReport charts_coincide_check(const manifold::ChartFrame& frame,
                                        const std::vector<core::CorrelationOperator>& samples);

struct GaugeMap {
  std::vector<Matrix> values;  // Psi_V(y), dim V x f
  Matrix target_gram;
  Matrix u_x;
  std::vector<double> residuals;  // ||y + Psi_V(y)^* Psi_V(y)||
};

// Psi_V(y) = U_x phi(y). U_x must map S_x Krein-unitarily onto V (checked).
GaugeMap build_gauge(const manifold::ChartFrame& frame,
                     const std::vector<core::CorrelationOperator>& omega, const Matrix& u_x,
                     const Matrix& target_gram, bool parallel = false);

struct CanonicalTarget {
  Matrix gram;  // diag(-sign(lambda_i))
  Matrix u_x;   // diag(sqrt|lambda_i|) W^dagger with X = W diag(lambda) W^dagger
};

// A Krein isometry S_x -> C^{p+q} onto a diagonal +-1 Gram matrix.
CanonicalTarget canonical_target(const Matrix& X);

}  // namespace cfsgauge::gauge
