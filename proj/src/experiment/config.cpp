#include "cfsgauge/experiment/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>

#include "cfsgauge/error.hpp"

namespace cfsgauge::experiment {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  fail(Errc::config_error, "field '" + field + "': " + why);
}

double number(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) bad(path + key, "missing");
  const json& v = obj.at(key);
  if (!v.is_number()) bad(path + key, "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) bad(path + key, "must be finite");
  return d;
}

long long integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) bad(path, "must be an integer");
  return v.get<long long>();
}

void parse_points(const json& doc, ExperimentConfig& cfg) {
  if (!doc.contains("points")) bad("points", "missing");
  const json& pts = doc.at("points");
  if (!pts.is_object()) bad("points", "must be an object with 'list' or 'grid'");
  if (pts.contains("list")) {
    const json& list = pts.at("list");
    if (!list.is_array() || list.empty()) bad("points.list", "must be a non-empty array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "points.list[" + std::to_string(i) + "]";
      const json& p = list[i];
      if (!p.is_array() || p.size() != 4) bad(path, "must be [t, x1, x2, x3]");
      box::SpacetimePoint sp;
      for (std::size_t k = 0; k < 4; ++k) {
        if (!p[k].is_number()) bad(path, "entries must be numbers");
        const double v = p[k].get<double>();
        if (!std::isfinite(v)) bad(path, "entries must be finite");
        if (k == 0) {
          sp.t = v;
        } else {
          sp.x[k - 1] = v;
        }
      }
      cfg.points.push_back(sp.reduced(cfg.box.L));
    }
  } else if (pts.contains("grid")) {
    const json& grid = pts.at("grid");
    if (!grid.is_object()) bad("points.grid", "must be an object");
    if (!grid.contains("nt")) bad("points.grid.nt", "missing");
    if (!grid.contains("nx")) bad("points.grid.nx", "missing");
    const long long nt = integer(grid.at("nt"), "points.grid.nt");
    const long long nx = integer(grid.at("nx"), "points.grid.nx");
    if (nt < 1) bad("points.grid.nt", "must be >= 1");
    if (nx < 1) bad("points.grid.nx", "must be >= 1");
    if (nt * nx * nx * nx > 100000) bad("points.grid", "more than 100000 points");
    double t0 = 0.0, t1 = 0.0;
    if (grid.contains("t_range")) {
      const json& tr = grid.at("t_range");
      if (!tr.is_array() || tr.size() != 2 || !tr[0].is_number() || !tr[1].is_number()) {
        bad("points.grid.t_range", "must be [t0, t1]");
      }
      t0 = tr[0].get<double>();
      t1 = tr[1].get<double>();
      if (!std::isfinite(t0) || !std::isfinite(t1)) bad("points.grid.t_range", "must be finite");
    }
    const double L = cfg.box.L;
    for (long long it = 0; it < nt; ++it) {
      const double t = nt == 1 ? t0 : t0 + static_cast<double>(it) * (t1 - t0) / (nt - 1);
      for (long long i = 0; i < nx; ++i) {
        for (long long j = 0; j < nx; ++j) {
          for (long long k = 0; k < nx; ++k) {
            box::SpacetimePoint sp;
            sp.t = t;
            sp.x = {-L + 2.0 * L * i / nx, -L + 2.0 * L * j / nx, -L + 2.0 * L * k / nx};
            cfg.points.push_back(sp);
          }
        }
      }
    }
  } else {
    bad("points", "needs 'list' or 'grid'");
  }
}

void parse_tolerances(const json& doc, Tolerances& tol) {
  if (!doc.contains("tolerances")) return;
  const json& t = doc.at("tolerances");
  if (!t.is_object()) bad("tolerances", "must be an object");
  const std::map<std::string, double Tolerances::*> fields = {
      {"tol", &Tolerances::tol},
      {"tol_sqrt", &Tolerances::tol_sqrt},
      {"singular_rel", &Tolerances::singular_rel},
      {"rank_rel", &Tolerances::rank_rel},
      {"radius_series", &Tolerances::radius_series},
      {"chart_u11_min", &Tolerances::chart_u11_min},
      {"jacobian_rank_rel", &Tolerances::jacobian_rank_rel},
      {"massless_form_rel", &Tolerances::massless_form_rel},
      {"degeneracy_rel", &Tolerances::degeneracy_rel},
      {"eigvec_condition_max", &Tolerances::eigvec_condition_max},
  };
  for (const auto& [key, value] : t.items()) {
    const auto it = fields.find(key);
    if (it == fields.end()) bad("tolerances." + key, "unknown tolerance");
    if (!value.is_number()) bad("tolerances." + key, "must be a number");
    const double v = value.get<double>();
    if (!(std::isfinite(v) && v > 0.0)) bad("tolerances." + key, "must be positive");
    tol.*(it->second) = v;
  }
}

}  // namespace

bool ExperimentConfig::wants(const std::string& task) const {
  return std::find(tasks.begin(), tasks.end(), task) != tasks.end();
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) bad("<root>", "must be a JSON object");
  ExperimentConfig cfg;
  cfg.source = nlohmann::ordered_json::parse(doc.dump());

  if (!doc.contains("box")) bad("box", "missing");
  const json& b = doc.at("box");
  if (!b.is_object()) bad("box", "must be an object");
  cfg.box.L = number(b, "L", "box.");
  cfg.box.eps = number(b, "eps", "box.");
  cfg.box.m = number(b, "m", "box.");
  if (!(cfg.box.L > 0.0)) bad("box.L", "must be positive");
  if (!(cfg.box.eps > 0.0)) bad("box.eps", "must be positive");
  if (!(cfg.box.m >= 0.0)) bad("box.m", "must be non-negative");

  parse_points(doc, cfg);

  if (doc.contains("seed")) {
    const long long s = integer(doc.at("seed"), "seed");
    if (s < 0) bad("seed", "must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  parse_tolerances(doc, cfg.tol);

  if (doc.contains("tasks")) {
    const json& t = doc.at("tasks");
    if (!t.is_array() || t.empty()) bad("tasks", "must be a non-empty array");
    for (const auto& item : t) {
      if (!item.is_string()) bad("tasks", "entries must be strings");
      const std::string name = item.get<std::string>();
      const auto& known = known_tasks();
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        bad("tasks", "unknown task '" + name + "'");
      }
      if (!cfg.wants(name)) cfg.tasks.push_back(name);
    }
  } else {
    cfg.tasks = known_tasks();
  }

  if (doc.contains("trials")) {
    const long long n = integer(doc.at("trials"), "trials");
    if (n < 1 || n > 10000) bad("trials", "must be in [1, 10000]");
    cfg.trials = static_cast<int>(n);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::config_error, "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(Errc::config_error, "'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

}  // namespace cfsgauge::experiment
