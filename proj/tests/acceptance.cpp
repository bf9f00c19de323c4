// Runs every acceptance criterion at its stated parameters and tolerance and
// prints one PASS/FAIL line per criterion. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "treepot/config.hpp"
#include "treepot/suites.hpp"

using namespace treepot;

namespace {

struct Criterion {
  int number;
  std::string suite;
  std::vector<std::string> experiments;
  // Checks that decide the criterion; empty means every check of the run.
  std::vector<std::string> checks;
  double time_limit;  // seconds; 0 for none
  std::function<void(ExperimentConfig&)> adjust;
};

struct Outcome {
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
  SuiteOutput output{SuiteReport(""), {}};
};

ExperimentConfig base_config(const Criterion& c) {
  ExperimentConfig config;
  config.experiments = c.experiments;
  if (c.adjust) c.adjust(config);
  return config;
}

std::string brief(const nlohmann::ordered_json& values) {
  std::string s = values.dump();
  if (s.size() > 160) s = s.substr(0, 157) + "...";
  return s;
}

Outcome run(const Criterion& c) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  o.output = run_suite(c.suite, base_config(c));
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::vector<const Check*> deciding;
  if (c.checks.empty()) {
    for (const auto& check : o.output.report.checks()) deciding.push_back(&check);
  } else {
    for (const auto& name : c.checks) {
      const Check* check = o.output.report.find(name);
      if (!check) {
        o.detail += " missing check " + name + ";";
        return o;
      }
      deciding.push_back(check);
    }
  }
  bool pass = !deciding.empty();
  for (const Check* check : deciding) {
    pass = pass && check->status == Status::pass;
    o.detail += " " + check->name + "=" + std::string(to_string(check->status));
    if (check->status != Status::pass) {
      o.detail += " " + brief(check->values);
      if (!check->note.empty()) o.detail += " (" + check->note + ")";
    }
    o.detail += ";";
  }
  if (c.time_limit > 0 && o.seconds >= c.time_limit) {
    pass = false;
    o.detail += " over the time limit;";
  }
  o.pass = pass;
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "identities", {"geodesic-triples"}, {}, 10.0, nullptr},
      {2, "identities", {"certification"}, {}, 10.0, nullptr},
      {3, "identities", {"green-diagonal"}, {}, 0.0, nullptr},
      {4, "identities", {"h-transform"}, {}, 0.0, nullptr},
      {5, "lemmas", {"conditioned-hitting"}, {}, 120.0, nullptr},
      {6, "lemmas", {"occupation"}, {}, 0.0, nullptr},
      {7, "lemmas", {"tube-lower-bound"}, {"tube-lower-bound-identity", "tube-lower-bound"}, 0.0, nullptr},
      {8, "lemmas", {"tube-green-ratio"}, {"tube-green-ratio"}, 0.0, nullptr},
      {9, "lemmas", {"martingale"}, {}, 0.0, nullptr},
      {10, "fatou", {"fatou"}, {"fatou-agreement-martin", "fatou-theta0-unbounded"}, 300.0,
       [](ExperimentConfig& c) { c.fatou.functions = {"martin"}; }},
  };

  int failures = 0;
  std::vector<Outcome> first;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = run(c);
    } catch (const std::exception& e) {
      o.detail = std::string(" error: ") + e.what();
    }
    std::printf("criterion %d: %s (%.2f s)%s\n", c.number, o.pass ? "PASS" : "FAIL", o.seconds, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
    first.push_back(std::move(o));
  }

  // Determinism: every command above, repeated with the same seed.
  bool identical = true;
  std::string detail;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      const SuiteOutput again = run_suite(criteria[i].suite, base_config(criteria[i]));
      const bool same = again.report_text() == first[i].output.report_text() && again.files == first[i].output.files;
      if (!same) detail += " criterion " + std::to_string(criteria[i].number) + " differs;";
      identical = identical && same;
    } catch (const std::exception& e) {
      identical = false;
      detail += std::string(" error: ") + e.what() + ";";
    }
  }
  if (identical) detail = " all reports and tables byte-identical";
  std::printf("criterion 11: %s%s\n", identical ? "PASS" : "FAIL", detail.c_str());
  failures += identical ? 0 : 1;

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
