#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace cfsgauge::experiment {

enum class Compare { at_most, at_least, equal, within };

struct Assertion {
  std::string name;
  std::string paper_ref;  // statement being checked
  double measured = 0.0;
  double threshold = 0.0;
  double upper = 0.0;  // only for Compare::within: [threshold, upper]
  Compare compare = Compare::at_most;
  bool pass = false;
};

struct TaskSection {
  std::string name;
  bool failed = false;  // TaskError: the task stopped early
  std::string error;
  std::vector<Assertion> assertions;
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
};

// Collects assertions per task and renders report.json. NaN and infinite
// measurements are written as null and never pass.
class Report {
 public:
  TaskSection& begin_task(const std::string& name);

  // Each returns the pass flag.
  bool at_most(const std::string& name, const std::string& ref, double measured, double bound);
  bool at_least(const std::string& name, const std::string& ref, double measured, double bound);
  bool equal(const std::string& name, const std::string& ref, double measured, double expected);
  bool within(const std::string& name, const std::string& ref, double measured, double lo,
              double hi);
  // Informational value, not an assertion.
  void value(const std::string& key, nlohmann::ordered_json v);
  void task_error(const std::string& message);

  int assertion_count() const;
  int failed_count() const;
  int task_error_count() const;
  bool all_passed() const { return failed_count() == 0 && task_error_count() == 0; }

  nlohmann::ordered_json to_json(const nlohmann::ordered_json& header) const;
  const std::vector<TaskSection>& tasks() const { return tasks_; }

 private:
  bool add(Assertion a);
  TaskSection& current();

  std::vector<TaskSection> tasks_;
};

// Finite doubles pass through, NaN and infinities become null.
nlohmann::ordered_json number_or_null(double v);

}  // namespace cfsgauge::experiment
