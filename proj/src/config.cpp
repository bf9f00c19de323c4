#include "treepot/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "treepot/errors.hpp"

namespace treepot {

namespace {

using json = nlohmann::json;

const std::map<std::string, std::vector<std::string>>& suite_experiments() {
  static const std::map<std::string, std::vector<std::string>> names{
      {"identities",
       {"geodesic-triples", "certification", "green-diagonal", "h-transform", "martin-normalization",
        "restriction-monotonicity"}},
      {"lemmas", {"conditioned-hitting", "occupation", "tube-lower-bound", "tube-green-ratio", "martingale"}},
      {"fatou", {"fatou"}},
      {"simulate", {"simulate"}},
  };
  return names;
}

// Reads the keys of one JSON object, rejecting any that were not consumed.
class Reader {
 public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + " must be an object");
  }
  Reader(const Reader&) = delete;

  ~Reader() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError("unknown key " + where_ + "." + key);
    }
  }

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  template <class T>
  void read(const std::string& key, T& out) {
    const json* v = get(key);
    if (!v) return;
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!v->is_boolean()) throw ConfigError("");
      } else if constexpr (std::is_unsigned_v<T>) {
        if (!v->is_number_unsigned()) throw ConfigError("");
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v->is_number()) throw ConfigError("");
      }
      out = v->get<T>();
    } catch (const std::exception&) {
      throw ConfigError("bad value for " + where_ + "." + key);
    }
  }

  std::string where(const std::string& key) const { return where_ + "." + key; }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void check_ray(const std::vector<std::uint32_t>& ray, const std::string& where) {
  for (auto c : ray) require(c < kMaxDegree, where + " has a child index out of range");
}

}  // namespace

bool ExperimentConfig::selected(const std::string& name) const {
  if (!experiments) return true;
  return std::find(experiments->begin(), experiments->end(), name) != experiments->end();
}

const std::vector<std::string>& experiment_names(const std::string& suite) {
  auto it = suite_experiments().find(suite);
  if (it == suite_experiments().end()) throw ConfigError("unknown suite " + suite);
  return it->second;
}

TreeSpec parse_tree_spec(const json& j) {
  TreeSpec s;
  Reader r(j, "tree");
  if (const json* kind = r.get("kind")) {
    const auto k = kind->is_string() ? kind->get<std::string>() : "";
    if (k == "homogeneous") {
      s.kind = TreeKind::homogeneous;
    } else if (k == "seeded-random") {
      s.kind = TreeKind::seeded_random;
    } else {
      throw ConfigError("tree.kind must be homogeneous or seeded-random");
    }
  }
  if (const json* kernel = r.get("kernel")) {
    const auto k = kernel->is_string() ? kernel->get<std::string>() : "";
    if (k == "uniform") {
      s.kernel = KernelRule::uniform;
    } else if (k == "seeded-random") {
      s.kernel = KernelRule::seeded_random;
    } else {
      throw ConfigError("tree.kernel must be uniform or seeded-random");
    }
  }
  r.read("degree", s.degree);
  r.read("d_min", s.d_min);
  r.read("d_max", s.d_max);
  r.read("epsilon", s.epsilon);
  r.read("eta", s.eta);
  r.read("seed", s.seed);
  s.validate();
  return s;
}

nlohmann::ordered_json to_json(const TreeSpec& s) {
  return {{"kind", s.kind == TreeKind::homogeneous ? "homogeneous" : "seeded-random"},
          {"degree", s.degree},
          {"d_min", s.d_min},
          {"d_max", s.d_max},
          {"kernel", s.kernel == KernelRule::uniform ? "uniform" : "seeded-random"},
          {"epsilon", s.epsilon},
          {"eta", s.eta},
          {"seed", s.seed}};
}

ExperimentConfig parse_config(const json& j) {
  ExperimentConfig c;
  Reader r(j, "config");
  if (const json* t = r.get("tree")) c.tree = parse_tree_spec(*t);
  if (const json* v = r.get("solver")) {
    Reader s(*v, "solver");
    s.read("depth", c.solver.depth);
    s.read("tol", c.solver.tol);
    s.read("deep_depth", c.solver.deep_depth);
    s.read("width_tol", c.solver.width_tol);
  }
  require(c.solver.depth >= 1 && c.solver.deep_depth >= 1, "solver depths must be at least 1");
  require(c.solver.tol > 0 && c.solver.width_tol > 0, "solver tolerances must be positive");
  if (const json* v = r.get("simulation")) {
    Reader s(*v, "simulation");
    s.read("n_paths", c.simulation.n_paths);
    s.read("horizon", c.simulation.horizon);
    s.read("seed", c.simulation.seed);
  }
  if (const json* v = r.get("diagnostics")) {
    Reader s(*v, "diagnostics");
    s.read("delta_conv", c.thresholds.conv);
    s.read("delta_bound", c.thresholds.bound);
    s.read("delta_energy", c.thresholds.energy);
  }
  if (const json* v = r.get("execution")) {
    const auto e = v->is_string() ? v->get<std::string>() : "";
    if (e == "parallel") {
      c.execution = Execution::parallel;
    } else if (e == "serial") {
      c.execution = Execution::serial;
    } else {
      throw ConfigError("execution must be parallel or serial");
    }
  }
  if (r.get("experiments")) {
    std::vector<std::string> names;
    r.read("experiments", names);
    for (const auto& name : names) {
      bool known = false;
      for (const auto& [_, list] : suite_experiments()) {
        known = known || std::find(list.begin(), list.end(), name) != list.end();
      }
      require(known, "unknown experiment " + name);
    }
    c.experiments = std::move(names);
  }
  r.read("output", c.output);
  r.read("ray", c.ray);
  check_ray(c.ray, "config.ray");
  if (const json* v = r.get("identities")) {
    Reader s(*v, "identities");
    auto& o = c.identities;
    s.read("triples", o.triples);
    s.read("certification_depth", o.certification_depth);
    s.read("recheck_depth", o.recheck_depth);
    s.read("certified_distance", o.certified_distance);
    s.read("sample_radius", o.sample_radius);
    s.read("green_samples", o.green_samples);
    s.read("restriction_radius", o.restriction_radius);
    s.read("certified_width", o.certified_width);
    require(o.recheck_depth > o.certification_depth, "identities.recheck_depth must exceed certification_depth");
    require(o.certified_distance <= o.certification_depth, "identities.certified_distance exceeds the depth");
    require(o.restriction_radius >= 1, "identities.restriction_radius must be at least 1");
  }
  if (const json* v = r.get("lemmas")) {
    Reader s(*v, "lemmas");
    auto& o = c.lemmas;
    s.read("hitting_projection", o.hitting_projection);
    s.read("hitting_ray_depth", o.hitting_ray_depth);
    s.read("occupation_radius", o.occupation_radius);
    s.read("occupation_vertices", o.occupation_vertices);
    s.read("tube_widths", o.tube_widths);
    s.read("tube_depth", o.tube_depth);
    s.read("ratio_width", o.ratio_width);
    s.read("ratio_depth", o.ratio_depth);
    s.read("martingale_radius", o.martingale_radius);
    s.read("martingale_steps", o.martingale_steps);
    for (const auto& w : o.occupation_vertices) {
      try {
        (void)VertexId::parse(w);
      } catch (const std::exception&) {
        throw ConfigError("bad vertex in lemmas.occupation_vertices: " + w);
      }
    }
  }
  if (const json* v = r.get("fatou")) {
    Reader s(*v, "fatou");
    auto& o = c.fatou;
    s.read("n_rays", o.n_rays);
    s.read("scale", o.scale);
    s.read("c", o.c);
    s.read("walk_horizon", o.walk_horizon);
    s.read("theta0", o.theta0);
    s.read("theta1", o.theta1);
    s.read("dirichlet_radius", o.dirichlet_radius);
    s.read("functions", o.functions);
    check_ray(o.theta0, "fatou.theta0");
    check_ray(o.theta1, "fatou.theta1");
    require(o.scale >= 1, "fatou.scale must be at least 1");
    require(o.dirichlet_radius >= 1, "fatou.dirichlet_radius must be at least 1");
    for (const auto& f : o.functions) {
      require(f == "constant" || f == "martin" || f == "mixture" || f == "dirichlet",
              "unknown fatou function " + f);
    }
  }
  if (const json* v = r.get("simulate")) {
    Reader s(*v, "simulate");
    auto& o = c.simulate;
    s.read("start", o.start);
    s.read("conditioned", o.conditioned);
    try {
      (void)VertexId::parse(o.start);
    } catch (const std::exception&) {
      throw ConfigError("bad simulate.start vertex: " + o.start);
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["tree"] = to_json(c.tree);
  j["solver"] = {{"depth", c.solver.depth},
                 {"tol", c.solver.tol},
                 {"deep_depth", c.solver.deep_depth},
                 {"width_tol", c.solver.width_tol}};
  j["simulation"] = {{"n_paths", c.simulation.n_paths},
                     {"horizon", c.simulation.horizon},
                     {"seed", c.simulation.seed}};
  j["diagnostics"] = {{"delta_conv", c.thresholds.conv},
                      {"delta_bound", c.thresholds.bound},
                      {"delta_energy", c.thresholds.energy}};
  j["execution"] = c.execution == Execution::parallel ? "parallel" : "serial";
  if (c.experiments) j["experiments"] = *c.experiments;
  j["output"] = c.output;
  j["ray"] = c.ray;
  const auto& i = c.identities;
  j["identities"] = {{"triples", i.triples},
                     {"certification_depth", i.certification_depth},
                     {"recheck_depth", i.recheck_depth},
                     {"certified_distance", i.certified_distance},
                     {"sample_radius", i.sample_radius},
                     {"green_samples", i.green_samples},
                     {"restriction_radius", i.restriction_radius},
                     {"certified_width", i.certified_width}};
  const auto& l = c.lemmas;
  j["lemmas"] = {{"hitting_projection", l.hitting_projection},
                 {"hitting_ray_depth", l.hitting_ray_depth},
                 {"occupation_radius", l.occupation_radius},
                 {"occupation_vertices", l.occupation_vertices},
                 {"tube_widths", l.tube_widths},
                 {"tube_depth", l.tube_depth},
                 {"ratio_width", l.ratio_width},
                 {"ratio_depth", l.ratio_depth},
                 {"martingale_radius", l.martingale_radius},
                 {"martingale_steps", l.martingale_steps}};
  const auto& f = c.fatou;
  j["fatou"] = {{"n_rays", f.n_rays},
                {"scale", f.scale},
                {"c", f.c},
                {"walk_horizon", f.walk_horizon},
                {"theta0", f.theta0},
                {"theta1", f.theta1},
                {"dirichlet_radius", f.dirichlet_radius},
                {"functions", f.functions}};
  j["simulate"] = {{"start", c.simulate.start}, {"conditioned", c.simulate.conditioned}};
  return j;
}

}  // namespace treepot
