#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cfsgauge/experiment/config.hpp"
#include "cfsgauge/experiment/report.hpp"
#include "cfsgauge/experiment/runner.hpp"
#include "common.hpp"

using namespace cfsgauge;
using namespace cfsgauge::experiment;
using nlohmann::json;

namespace {

json base_config() {
  return json::parse(R"({
    "box": {"L": 3.141592653589793, "eps": 0.4, "m": 1.0},
    "points": {"list": [[0, 0, 0, 0], [0.1, 0.2, -0.1, 0.05], [0.3, 1.0, 2.0, -1.0]]},
    "seed": 5,
    "trials": 4
  })");
}

std::string config_error(const json& doc) {
  try {
    parse_config(doc);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::config_error);
    return e.what();
  }
  return "";
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("cfsgauge_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, ParsesDefaults) {
  const ExperimentConfig c = parse_config(base_config());
  EXPECT_EQ(c.points.size(), 3u);
  EXPECT_EQ(c.tasks, known_tasks());
  EXPECT_EQ(c.trials, 4);
  EXPECT_EQ(c.seed, 5u);
}

TEST(Config, GridPoints) {
  json doc = base_config();
  doc["points"] = json::parse(R"({"grid": {"nt": 2, "nx": 3, "t_range": [0.0, 1.0]}})");
  const ExperimentConfig c = parse_config(doc);
  ASSERT_EQ(c.points.size(), 54u);
  EXPECT_EQ(c.points[0].t, 0.0);
  EXPECT_EQ(c.points[27].t, 1.0);
  EXPECT_NEAR(c.points[1].x[2], -std::numbers::pi + 2.0 * std::numbers::pi / 3.0, 1e-15);
}

TEST(Config, ErrorsNameTheField) {
  json doc = base_config();
  doc["box"]["eps"] = 0.0;
  EXPECT_NE(config_error(doc).find("box.eps"), std::string::npos);

  doc = base_config();
  doc.erase("points");
  EXPECT_NE(config_error(doc).find("'points'"), std::string::npos);

  doc = base_config();
  doc["tasks"] = {"charts", "bogus"};
  EXPECT_NE(config_error(doc).find("bogus"), std::string::npos);

  doc = base_config();
  doc["tolerances"] = {{"tol", -1.0}};
  EXPECT_NE(config_error(doc).find("tolerances.tol"), std::string::npos);

  doc = base_config();
  doc["tolerances"] = {{"nonsense", 1.0}};
  EXPECT_NE(config_error(doc).find("tolerances.nonsense"), std::string::npos);

  doc = base_config();
  doc["points"] = json::parse(R"({"grid": {"nt": 0, "nx": 3}})");
  EXPECT_NE(config_error(doc).find("points.grid.nt"), std::string::npos);

  doc = base_config();
  doc["trials"] = 0;
  EXPECT_NE(config_error(doc).find("trials"), std::string::npos);
}

TEST(Report, NonFiniteNeverPasses) {
  Report r;
  r.begin_task("t");
  EXPECT_FALSE(r.at_most("nan", "", NAN, 1.0));
  EXPECT_TRUE(r.within("in", "", 4.0, 3.0, 5.0));
  const auto doc = r.to_json({});
  EXPECT_TRUE(doc["tasks"][0]["assertions"][0]["measured"].is_null());
  EXPECT_EQ(doc["summary"]["failed"], 1);
  EXPECT_FALSE(doc["summary"]["pass"].get<bool>());
}

TEST(Runner, DimCountReportsModeCount) {
  json doc = base_config();
  doc["tasks"] = {"dim-count"};
  const Report rep = run_tasks(parse_config(doc), {});
  ASSERT_EQ(rep.tasks().size(), 1u);
  EXPECT_EQ(rep.tasks()[0].values["f"], 114);
  EXPECT_TRUE(rep.all_passed());
}

TEST(Runner, ReportIsDeterministic) {
  json doc = base_config();
  doc["tasks"] = {"charts", "gauge"};
  const ExperimentConfig cfg = parse_config(doc);
  RunOptions serial, parallel;
  parallel.parallel = true;
  const auto a = run_tasks(cfg, serial).to_json(report_header(cfg, cfg.seed)).dump();
  const auto b = run_tasks(cfg, serial).to_json(report_header(cfg, cfg.seed)).dump();
  const auto c = run_tasks(cfg, parallel).to_json(report_header(cfg, cfg.seed)).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  RunOptions other;
  other.seed = 6;
  EXPECT_NE(a, run_tasks(cfg, other).to_json(report_header(cfg, cfg.seed)).dump());
}

TEST(Runner, EveryAssertionHasAnAnchor) {
  const Report rep = run_tasks(parse_config(base_config()), {});
  EXPECT_EQ(rep.task_error_count(), 0);
  for (const auto& t : rep.tasks()) {
    for (const auto& a : t.assertions) EXPECT_FALSE(a.paper_ref.empty()) << a.name;
  }
  EXPECT_TRUE(rep.all_passed());
}

TEST(Runner, TaskErrorIsRecordedAndRunContinues) {
  json doc = base_config();
  // f = 2 makes the box tasks fail while the abstract suites still run
  doc["box"] = {{"L", 1.0}, {"eps", 0.9}, {"m", 1.0}};
  doc["tasks"] = {"gauge", "charts"};
  const Report rep = run_tasks(parse_config(doc), {});
  ASSERT_EQ(rep.tasks().size(), 2u);
  EXPECT_TRUE(rep.tasks()[0].failed);
  EXPECT_NE(rep.tasks()[0].error.find("TooFewModes"), std::string::npos);
  EXPECT_FALSE(rep.tasks()[1].failed);
  EXPECT_FALSE(rep.all_passed());
}

TEST(Runner, WritesFilesAndExitCodes) {
  const auto dir = temp_dir("run");
  json doc = base_config();
  doc["tasks"] = {"dim-count"};
  std::ofstream(dir / "good.json") << doc.dump();
  RunOptions opts;
  opts.out_dir = (dir / "out").string();
  EXPECT_EQ(run((dir / "good.json").string(), opts), 0);
  const json report = json::parse(slurp(dir / "out" / "report.json"));
  EXPECT_TRUE(report["summary"]["pass"].get<bool>());
  const std::string csv = slurp(dir / "out" / "kernels.csv");
  EXPECT_EQ(csv.rfind("t,x1,x2,x3,row,col,re,im\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 16);

  doc["box"]["eps"] = -1.0;
  std::ofstream(dir / "bad.json") << doc.dump();
  EXPECT_EQ(run((dir / "bad.json").string(), opts), 2);
  EXPECT_EQ(run((dir / "missing.json").string(), opts), 2);
}
