#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cfsgauge/dirac_box.hpp"
#include "cfsgauge/error.hpp"
#include "cfsgauge/experiment/runner.hpp"
#include "cfsgauge/manifold.hpp"

using namespace cfsgauge;

int main(int argc, char** argv) {
  CLI::App app{"Charts, gauges and Dirac sea checks for finite causal fermion systems"};
  app.require_subcommand(1);

  std::string config;
  experiment::RunOptions opts;
  std::int64_t seed = -1;
  auto* run = app.add_subcommand("run", "Run the verification tasks of a config file");
  run->add_option("config", config, "JSON config")->required();
  run->add_option("--out", opts.out_dir, "Output directory for report.json and kernels.csv");
  run->add_flag("--parallel", opts.parallel, "Evaluate points in parallel");
  run->add_option("--seed", seed, "Override the config seed")->check(CLI::NonNegativeNumber);

  int p = 0, q = 0, f = 0;
  auto* dim = app.add_subcommand("dim", "Dimension of F^{p,q} for f-dimensional H");
  dim->add_option("p", p)->required();
  dim->add_option("q", q)->required();
  dim->add_option("f", f)->required();

  box::BoxConfig box_cfg;
  auto* modes = app.add_subcommand("modes", "Number of modes of the box Dirac sea");
  modes->add_option("L", box_cfg.L)->required();
  modes->add_option("eps", box_cfg.eps)->required();
  modes->add_option("m", box_cfg.m)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (seed >= 0) opts.seed = static_cast<std::uint64_t>(seed);
      return experiment::run(config, opts);
    }
    if (*dim) {
      std::cout << manifold::manifold_dim(p, q, f) << "\n";
      return 0;
    }
    if (*modes) {
      box_cfg.validate();
      std::cout << box::momentum_modes(box_cfg).size() << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
