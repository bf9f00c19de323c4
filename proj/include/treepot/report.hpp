#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "treepot/martin.hpp"
#include "treepot/montecarlo.hpp"
#include "treepot/walk.hpp"

namespace treepot {

enum class Status { pass, fail, indeterminate };
std::string_view to_string(Status s);

/// One verified statement. `anchor` quotes the formula being checked, or is
/// "plumbing" for checks of the machinery itself.
struct Check {
  std::string name;
  std::string anchor;
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  nlohmann::ordered_json target;
  double margin = 0.0;  // distance to the failure boundary; negative on failure
  Status status = Status::indeterminate;
  std::string note;
};

class SuiteReport {
 public:
  explicit SuiteReport(std::string suite) : suite_(std::move(suite)) {}

  const std::string& suite() const noexcept { return suite_; }
  nlohmann::ordered_json& metadata() noexcept { return metadata_; }
  const std::vector<Check>& checks() const noexcept { return checks_; }
  void add(Check c) { checks_.push_back(std::move(c)); }

  std::size_t count(Status s) const;
  bool failed() const { return count(Status::fail) > 0; }
  /// First check with this name, or nullptr.
  const Check* find(std::string_view name) const;

  nlohmann::ordered_json to_json() const;

 private:
  std::string suite_;
  nlohmann::ordered_json metadata_ = nlohmann::ordered_json::object();
  std::vector<Check> checks_;
};

/// Everything a suite writes: report.json plus named CSV tables.
struct SuiteOutput {
  SuiteReport report;
  std::map<std::string, std::string> files;  // relative path -> contents

  /// report.json as written to disk.
  std::string report_text() const;
  void write(const std::filesystem::path& dir) const;
};

nlohmann::ordered_json to_json(const Estimate& e);
nlohmann::ordered_json to_json(const Bracket& b);

/// Columns from_vertex, to_vertex, F_low, F_high for every in-domain directed
/// edge up to `max_depth`.
std::string potential_csv(const PotentialTable& table, std::size_t max_depth);
/// Columns vertex, K_low, K_high.
std::string martin_csv(const MartinKernel& kernel, const std::vector<VertexId>& vertices);
/// Columns step, vertex.
std::string path_csv(const WalkPath& path);

/// Shortest decimal text that reads back as the same double.
std::string format_double(double v);

}  // namespace treepot
