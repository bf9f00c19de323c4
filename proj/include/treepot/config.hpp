#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "treepot/diagnostics.hpp"
#include "treepot/potential.hpp"
#include "treepot/tree.hpp"

namespace treepot {

struct SolverConfig {
  std::size_t depth = 12;
  double tol = 1e-10;
  /// Depth of the table used where derived quantities must be accurate near
  /// the root (diagonal Green values, Martin kernels, conditioned walks).
  std::size_t deep_depth = 300;
  /// Brackets narrower than this are treated as certified.
  double width_tol = 1e-9;
};

struct SimulationConfig {
  std::size_t n_paths = 100000;
  std::size_t horizon = 400;
  std::uint64_t seed = 1;
};

struct IdentitiesConfig {
  std::size_t triples = 1000;
  std::size_t certification_depth = 20;
  std::size_t recheck_depth = 24;
  std::size_t certified_distance = 12;
  std::size_t sample_radius = 12;
  std::size_t green_samples = 1000;
  std::size_t restriction_radius = 3;
  double certified_width = 0.00390625;
};

struct LemmasConfig {
  std::size_t hitting_projection = 3;
  std::size_t hitting_ray_depth = 5;
  std::size_t occupation_radius = 4;
  std::vector<std::string> occupation_vertices;  // empty picks a default list of 10
  std::vector<std::size_t> tube_widths{0, 1, 2};
  std::size_t tube_depth = 12;
  std::size_t ratio_width = 1;
  std::size_t ratio_depth = 10;
  std::size_t martingale_radius = 6;
  std::size_t martingale_steps = 200;
};

struct FatouConfig {
  std::size_t n_rays = 500;
  std::size_t scale = 32;  // inner scale d; the outer one is 2d
  std::size_t c = 1;
  std::size_t walk_horizon = 4000;
  std::vector<std::uint32_t> theta0;
  std::vector<std::uint32_t> theta1{1};
  std::size_t dirichlet_radius = 12;
  std::vector<std::string> functions{"constant", "martin", "mixture", "dirichlet"};
};

struct SimulateConfig {
  std::string start = "/";
  bool conditioned = false;
};

/// Everything that determines the outputs of a run.
struct ExperimentConfig {
  TreeSpec tree;
  SolverConfig solver;
  SimulationConfig simulation;
  Thresholds thresholds;
  /// Ray prefix of the boundary point used by identities, lemmas and
  /// conditioned simulation; extended by child 0.
  std::vector<std::uint32_t> ray;
  Execution execution = Execution::parallel;
  /// Selected experiment names; nullopt runs every experiment of a suite.
  std::optional<std::vector<std::string>> experiments;
  std::string output = "out";
  IdentitiesConfig identities;
  LemmasConfig lemmas;
  FatouConfig fatou;
  SimulateConfig simulate;

  bool selected(const std::string& name) const;
};

/// Experiment names known to each suite.
const std::vector<std::string>& experiment_names(const std::string& suite);

/// Strict parse: unknown keys and wrong types are ConfigErrors.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::ordered_json to_json(const ExperimentConfig& c);

TreeSpec parse_tree_spec(const nlohmann::json& j);
nlohmann::ordered_json to_json(const TreeSpec& s);

}  // namespace treepot
