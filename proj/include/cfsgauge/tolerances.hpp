#pragma once

namespace cfsgauge {

// Numerical thresholds shared by all modules. Defaults are sized for
// double precision at operator dimensions up to a few hundred.
struct Tolerances {
  double tol = 1e-10;              // generic residual tolerance
  double tol_sqrt = 1e-9;          // square roots / polar decomposition
  double singular_rel = 1e-12;     // Gram invertibility, relative to ||gram||
  double rank_rel = 1e-8;          // regularity test, relative to ||x||
  double radius_series = 0.8;      // ||B - 1|| bound for square roots near 1
  double chart_u11_min = 0.5;      // smallest singular value of U11 in chart_inverse
  double jacobian_rank_rel = 1e-6; // numeric rank cut, relative to sigma_max
  double massless_form_rel = 1e-6; // non-gamma^0 part of P(x,x) relative to |alpha|
  double degeneracy_rel = 1e-8;    // |lambda_+ - lambda_-| relative threshold
  double eigvec_condition_max = 1e8;  // beyond this the eigenbasis is treated as defective
};

}  // namespace cfsgauge
