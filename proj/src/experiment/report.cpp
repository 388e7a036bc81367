#include "cfsgauge/experiment/report.hpp"

#include <cmath>

namespace cfsgauge::experiment {

using nlohmann::ordered_json;

namespace {

const char* compare_name(Compare c) {
  switch (c) {
    case Compare::at_most: return "<=";
    case Compare::at_least: return ">=";
    case Compare::equal: return "==";
    case Compare::within: return "in";
  }
  return "?";
}

}  // namespace

ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

TaskSection& Report::begin_task(const std::string& name) {
  tasks_.push_back(TaskSection{name, false, {}, {}, ordered_json::object()});
  return tasks_.back();
}

TaskSection& Report::current() {
  if (tasks_.empty()) begin_task("unnamed");
  return tasks_.back();
}

bool Report::add(Assertion a) {
  if (!std::isfinite(a.measured)) {
    a.pass = false;
  } else {
    switch (a.compare) {
      case Compare::at_most: a.pass = a.measured <= a.threshold; break;
      case Compare::at_least: a.pass = a.measured >= a.threshold; break;
      case Compare::equal: a.pass = a.measured == a.threshold; break;
      case Compare::within: a.pass = a.measured >= a.threshold && a.measured <= a.upper; break;
    }
  }
  current().assertions.push_back(a);
  return a.pass;
}

bool Report::at_most(const std::string& name, const std::string& ref, double measured,
                     double bound) {
  return add({name, ref, measured, bound, 0.0, Compare::at_most, false});
}

bool Report::at_least(const std::string& name, const std::string& ref, double measured,
                      double bound) {
  return add({name, ref, measured, bound, 0.0, Compare::at_least, false});
}

bool Report::equal(const std::string& name, const std::string& ref, double measured,
                   double expected) {
  return add({name, ref, measured, expected, 0.0, Compare::equal, false});
}

bool Report::within(const std::string& name, const std::string& ref, double measured, double lo,
                    double hi) {
  return add({name, ref, measured, lo, hi, Compare::within, false});
}

void Report::value(const std::string& key, ordered_json v) { current().values[key] = std::move(v); }

void Report::task_error(const std::string& message) {
  TaskSection& t = current();
  t.failed = true;
  t.error = message;
}

int Report::assertion_count() const {
  int n = 0;
  for (const auto& t : tasks_) n += static_cast<int>(t.assertions.size());
  return n;
}

int Report::failed_count() const {
  int n = 0;
  for (const auto& t : tasks_) {
    for (const auto& a : t.assertions) n += a.pass ? 0 : 1;
  }
  return n;
}

int Report::task_error_count() const {
  int n = 0;
  for (const auto& t : tasks_) n += t.failed ? 1 : 0;
  return n;
}

ordered_json Report::to_json(const ordered_json& header) const {
  ordered_json doc = header;
  ordered_json tasks = ordered_json::array();
  for (const auto& t : tasks_) {
    ordered_json jt;
    jt["name"] = t.name;
    jt["status"] = t.failed ? "error" : "ok";
    if (t.failed) jt["error"] = t.error;
    ordered_json items = ordered_json::array();
    for (const auto& a : t.assertions) {
      ordered_json ja;
      ja["name"] = a.name;
      ja["paper_ref"] = a.paper_ref;
      ja["measured"] = number_or_null(a.measured);
      ja["comparison"] = compare_name(a.compare);
      if (a.compare == Compare::within) {
        ja["threshold"] = ordered_json::array({a.threshold, a.upper});
      } else {
        ja["threshold"] = a.threshold;
      }
      ja["pass"] = a.pass;
      items.push_back(std::move(ja));
    }
    jt["assertions"] = std::move(items);
    jt["values"] = t.values;
    tasks.push_back(std::move(jt));
  }
  doc["tasks"] = std::move(tasks);
  ordered_json summary;
  summary["assertions"] = assertion_count();
  summary["failed"] = failed_count();
  summary["task_errors"] = task_error_count();
  summary["pass"] = all_passed();
  doc["summary"] = std::move(summary);
  return doc;
}

}  // namespace cfsgauge::experiment
