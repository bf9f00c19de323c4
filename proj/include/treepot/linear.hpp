#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "treepot/tree.hpp"

namespace treepot {

struct LinearOptions {
  double residual_tol = 1e-12;
  std::size_t max_iterations = 200000;
  /// Direct fallback when the iteration stalls, up to this many vertices.
  std::size_t direct_limit = 5000;
  std::size_t max_vertices = 4'000'000;
};

/// The system (I - P_U) g = b on a finite vertex set U, where P_U is the
/// kernel restricted to U. The induced subgraph is a forest, so the direct
/// solve is an exact leaves-first elimination.
class ForestSystem {
 public:
  /// `column` solves (I - P_U) g = b; `row` solves the transposed system, so
  /// b = e_x gives the row G_U(x, .).
  enum class Orientation { column, row };

  ForestSystem(const TreeModel& t, std::vector<VertexId> vertices, std::size_t cap);

  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  std::optional<std::size_t> find(const VertexId& v) const;

  struct IterationInfo {
    std::size_t iterations = 0;
    double residual = 0.0;
    bool converged = false;
  };

  /// Gauss-Seidel sweeps (a Neumann-style series) until the max residual is
  /// below tol.
  std::vector<double> solve_iterative(std::span<const double> b, Orientation o, double tol,
                                      std::size_t max_iterations, IterationInfo* info = nullptr) const;
  std::vector<double> solve_direct(std::span<const double> b, Orientation o) const;

  /// max_i |g_i - b_i - sum_j a_ij g_j|.
  double residual(std::span<const double> g, std::span<const double> b, Orientation o) const;

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  // Coefficient of g_parent in row i, and of g_i in the parent's row.
  double to_parent(std::size_t i, Orientation o) const { return o == Orientation::column ? p_up_[i] : p_down_[i]; }
  double to_child(std::size_t k, Orientation o) const { return o == Orientation::column ? p_down_[k] : p_up_[k]; }

  std::vector<VertexId> vertices_;  // sorted by depth, then word
  std::unordered_map<VertexId, std::size_t, VertexIdHash> where_;
  std::vector<std::size_t> parent_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<double> p_up_;    // p(v, parent) when the parent is in U
  std::vector<double> p_down_;  // p(parent, v)
};

/// Green function of a finite set U: expected visits to y before the walk
/// from x leaves U.
class RestrictedGreen {
 public:
  RestrictedGreen(const TreeModel& t, std::vector<VertexId> set, LinearOptions options = {});

  double operator()(const VertexId& x, const VertexId& y) const;
  /// G_U(., y) indexed like vertices().
  std::vector<double> column(const VertexId& y) const;
  /// G_U(x, .) indexed like vertices().
  std::vector<double> row(const VertexId& x) const;

  const std::vector<VertexId>& vertices() const noexcept { return system_.vertices(); }
  std::optional<std::size_t> find(const VertexId& v) const { return system_.find(v); }
  const ForestSystem& system() const noexcept { return system_; }

 private:
  std::vector<double> solve(std::size_t unit, ForestSystem::Orientation o) const;

  ForestSystem system_;
  LinearOptions options_;
};

double green_restricted(const TreeModel& t, std::vector<VertexId> set, const VertexId& x, const VertexId& y,
                        const LinearOptions& options = {});

/// Solution of the Dirichlet problem on the ball of radius `radius`: harmonic
/// strictly inside, equal to `boundary` on the sphere. Indexed by the
/// breadth-first ball order of ball_enumerate.
std::vector<double> solve_ball_dirichlet(const TreeModel& t, std::size_t radius,
                                         const std::function<double(const VertexId&)>& boundary,
                                         std::size_t max_vertices = 4'000'000);

}  // namespace treepot
