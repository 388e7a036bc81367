#include "cfsgauge/experiment/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "cfsgauge/error.hpp"
#include "cfsgauge/experiment/tasks.hpp"
#include "cfsgauge/random.hpp"

namespace cfsgauge::experiment {

using nlohmann::ordered_json;

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

ordered_json report_header(const ExperimentConfig& cfg, std::uint64_t seed) {
  ordered_json h;
  h["tool"] = "cfsgauge";
  h["format"] = 1;
  h["seed"] = seed;
  h["config"] = cfg.source;
  ordered_json b;
  b["L"] = cfg.box.L;
  b["eps"] = cfg.box.eps;
  b["m"] = cfg.box.m;
  h["box"] = b;
  h["points"] = cfg.points.size();
  h["tasks_requested"] = cfg.tasks;
  return h;
}

Report run_tasks(const ExperimentConfig& cfg, const RunOptions& opts) {
  const std::uint64_t seed = opts.seed.value_or(cfg.seed);
  Report rep;
  for (const auto& name : cfg.tasks) {
    rep.begin_task(name);
    // each task gets its own stream so that task selection does not shift
    // the draws of the others
    Random rng(seed ^ fnv1a(name));
    try {
      run_task(name, cfg, rng, rep, opts.parallel);
    } catch (const std::exception& e) {
      rep.task_error(e.what());
    }
  }
  return rep;
}

void write_kernels_csv(const ExperimentConfig& cfg, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) fail(Errc::task_error, "cannot write '" + path + "'");
  std::fprintf(out, "t,x1,x2,x3,row,col,re,im\n");
  if (!cfg.points.empty()) {
    const box::KernelSum ks(cfg.box);
    const auto& x0 = cfg.points.front();
    for (const auto& p : cfg.points) {
      const Matrix4 k = ks(x0, p);
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
          std::fprintf(out, "%.17g,%.17g,%.17g,%.17g,%d,%d,%.17g,%.17g\n", p.t, p.x[0], p.x[1],
                       p.x[2], r, c, k(r, c).real(), k(r, c).imag());
        }
      }
    }
  }
  std::fclose(out);
}

int run(const std::string& config_path, const RunOptions& opts) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path);
    cfg.box.validate();
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  std::filesystem::create_directories(opts.out_dir);
  const Report rep = run_tasks(cfg, opts);
  const std::uint64_t seed = opts.seed.value_or(cfg.seed);
  {
    std::ofstream out(std::filesystem::path(opts.out_dir) / "report.json");
    out << rep.to_json(report_header(cfg, seed)).dump(2) << "\n";
  }
  try {
    write_kernels_csv(cfg, (std::filesystem::path(opts.out_dir) / "kernels.csv").string());
  } catch (const std::exception& e) {
    std::cerr << "kernels.csv: " << e.what() << "\n";
    return 1;
  }
  for (const auto& t : rep.tasks()) {
    int failed = 0;
    for (const auto& a : t.assertions) failed += a.pass ? 0 : 1;
    std::cout << t.name << ": " << t.assertions.size() - failed << "/" << t.assertions.size()
              << " passed";
    if (t.failed) std::cout << ", error: " << t.error;
    std::cout << "\n";
  }
  return rep.all_passed() ? 0 : 1;
}

}  // namespace cfsgauge::experiment
