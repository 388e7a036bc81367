#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cfsgauge/dirac_box.hpp"
#include "cfsgauge/tolerances.hpp"

namespace cfsgauge::experiment {

inline const std::vector<std::string>& known_tasks() {
  static const std::vector<std::string> tasks = {"dim-count", "charts", "gauge", "spectral",
                                                 "perturb"};
  return tasks;
}

struct ExperimentConfig {
  box::BoxConfig box;
  std::vector<box::SpacetimePoint> points;
  std::uint64_t seed = 0;
  Tolerances tol;
  std::vector<std::string> tasks;
  int trials = 20;  // size of each randomized sample set

  nlohmann::ordered_json source;  // the parsed document, echoed into the report

  bool wants(const std::string& task) const;
};

// Throws ConfigError naming the offending field.
//
//   {
//     "box":        {"L": ..., "eps": ..., "m": ...},
//     "points":     {"list": [[t, x1, x2, x3], ...]}
//                 | {"grid": {"nt": int, "nx": int, "t_range": [t0, t1]}},
//     "seed":       int,
//     "tolerances": {"tol": ..., ...},     optional, names as in Tolerances
//     "tasks":      ["dim-count", ...],    optional, default all
//     "trials":     int                    optional
//   }
//
// Grid points are t_i = t0 + i (t1 - t0) / (nt - 1) (t0 alone when nt = 1) and
// x_j = -L + j 2L / nx per axis, ordered t-major then x1, x2, x3.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

}  // namespace cfsgauge::experiment
