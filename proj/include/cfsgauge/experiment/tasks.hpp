#pragma once

#include <array>
#include <vector>

#include "cfsgauge/dirac_box.hpp"
#include "cfsgauge/experiment/config.hpp"
#include "cfsgauge/experiment/report.hpp"
#include "cfsgauge/random.hpp"
#include "cfsgauge/spectral_closed_chain.hpp"
#include "cfsgauge/tolerances.hpp"

// Verification suites. Each suite appends assertions to the current task
// section of the report and returns true when all of its assertions pass.
// Randomized suites draw everything from the supplied generator in a fixed
// order, so a seed determines the report.
namespace cfsgauge::experiment {

struct Signature3 {
  int p;
  int q;
  int f;
};

bool suite_dimension(Report& rep, Random& rng, const std::vector<Signature3>& cases,
                     const Tolerances& tol);
bool suite_chart_roundtrip(Report& rep, Random& rng, const std::vector<Signature3>& cases,
                           int trials, const Tolerances& tol);
bool suite_gaussian(Report& rep, Random& rng, const Signature3& sig, int pairs,
                    const Tolerances& tol);
bool suite_polar(Report& rep, Random& rng, int samples, const Tolerances& tol);
bool suite_wave_charts(Report& rep, Random& rng, const std::vector<int>& f_list, int samples,
                       const Tolerances& tol);

bool suite_box_modes(Report& rep, const box::BoxConfig& cfg);
bool suite_box_asymptotics(Report& rep, double L, const std::vector<double>& l_over_eps);
bool suite_box_regularity(Report& rep, const box::BoxConfig& cfg,
                          const std::vector<box::SpacetimePoint>& points, const Tolerances& tol,
                          bool parallel);
bool suite_box_kernel(Report& rep, const box::BoxConfig& cfg,
                      const std::vector<box::SpacetimePoint>& points, const Tolerances& tol);
bool suite_box_gauge(Report& rep, Random& rng, const box::BoxConfig& cfg,
                     const std::vector<box::SpacetimePoint>& points, const Tolerances& tol,
                     bool parallel);

bool suite_chain_spectra(Report& rep, Random& rng, int samples, const Tolerances& tol);
bool suite_expansion(Report& rep, double alpha, const chain::Vec4& u1, const chain::Vec4& zeta1,
                     const Tolerances& tol);
bool suite_isospectral(Report& rep, const box::BoxConfig& massless,
                       const std::vector<box::SpacetimePoint>& points, const Tolerances& tol);

bool suite_perturbation(Report& rep, Random& rng, const box::BoxConfig& massless,
                        const std::vector<box::SpacetimePoint>& points, int gauge_functions,
                        const Tolerances& tol);

// Runs one named task of the CLI on the configured box and points.
void run_task(const std::string& name, const ExperimentConfig& cfg, Random& rng, Report& rep,
              bool parallel);

// Points used by the massless suites: the configured box with m = 0.
box::BoxConfig massless_variant(const box::BoxConfig& cfg);

}  // namespace cfsgauge::experiment
