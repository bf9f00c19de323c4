#include "treepot/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "treepot/errors.hpp"

namespace treepot {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

std::size_t SuiteReport::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(checks_.begin(), checks_.end(), [s](const Check& c) { return c.status == s; }));
}

const Check* SuiteReport::find(std::string_view name) const {
  for (const auto& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

nlohmann::ordered_json SuiteReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite_;
  j["metadata"] = metadata_;
  auto& list = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks_) {
    nlohmann::ordered_json r;
    r["name"] = c.name;
    r["anchor"] = c.anchor;
    r["values"] = c.values;
    r["target"] = c.target;
    r["margin"] = c.margin;
    r["status"] = to_string(c.status);
    if (!c.note.empty()) r["note"] = c.note;
    list.push_back(std::move(r));
  }
  j["summary"] = {{"pass", count(Status::pass)},
                  {"fail", count(Status::fail)},
                  {"indeterminate", count(Status::indeterminate)}};
  return j;
}

std::string SuiteOutput::report_text() const { return report.to_json().dump(2) + "\n"; }

void SuiteOutput::write(const std::filesystem::path& dir) const {
  auto put = [&](const std::filesystem::path& rel, const std::string& text) {
    const auto path = dir / rel;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw ResourceError("cannot write " + path.string());
  };
  put("report.json", report_text());
  for (const auto& [rel, text] : files) put(rel, text);
}

nlohmann::ordered_json to_json(const Estimate& e) {
  return {{"estimate", e.estimate}, {"stderr", e.std_error}, {"n_paths", e.n_paths}, {"seed", e.seed}};
}

nlohmann::ordered_json to_json(const Bracket& b) { return nlohmann::ordered_json::array({b.low, b.high}); }

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string potential_csv(const PotentialTable& table, std::size_t max_depth) {
  std::ostringstream out;
  out << "from_vertex,to_vertex,F_low,F_high\n";
  table.for_each_edge(max_depth, [&](const VertexId& from, const VertexId& to, Bracket f) {
    out << from.to_string() << ',' << to.to_string() << ',' << format_double(f.low) << ',' << format_double(f.high)
        << '\n';
  });
  return out.str();
}

std::string martin_csv(const MartinKernel& kernel, const std::vector<VertexId>& vertices) {
  std::ostringstream out;
  out << "vertex,K_low,K_high\n";
  for (const auto& v : vertices) {
    const Bracket k = kernel.value(v);
    out << v.to_string() << ',' << format_double(k.low) << ',' << format_double(k.high) << '\n';
  }
  return out.str();
}

std::string path_csv(const WalkPath& path) {
  std::ostringstream out;
  out << "step,vertex\n";
  for (std::size_t k = 0; k < path.vertices.size(); ++k) out << k << ',' << path.vertices[k].to_string() << '\n';
  return out.str();
}

}  // namespace treepot
