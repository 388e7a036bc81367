#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cfsgauge/experiment/config.hpp"
#include "cfsgauge/experiment/report.hpp"

namespace cfsgauge::experiment {

struct RunOptions {
  std::string out_dir = ".";
  bool parallel = false;
  std::optional<std::uint64_t> seed;  // overrides the config seed
};

// Runs every requested task in order and returns the report. A task that
// throws is recorded as a task error and the run moves on.
Report run_tasks(const ExperimentConfig& cfg, const RunOptions& opts);

// Header object written at the top of report.json.
nlohmann::ordered_json report_header(const ExperimentConfig& cfg, std::uint64_t seed);

// Rows t,x1,x2,x3,row,col,re,im of P(x0, x) for every configured point x,
// with x0 the first point.
void write_kernels_csv(const ExperimentConfig& cfg, const std::string& path);

// Loads the config, runs it and writes report.json and kernels.csv into
// out_dir. Returns 0 if every assertion passed, 1 otherwise, 2 on a config
// error.
int run(const std::string& config_path, const RunOptions& opts);

}  // namespace cfsgauge::experiment
