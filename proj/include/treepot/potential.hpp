#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "treepot/bracket.hpp"
#include "treepot/subtree.hpp"
#include "treepot/tree.hpp"

namespace treepot {

enum class Execution { serial, parallel };

/// Storage for the directed-edge brackets. `radial` keeps one entry per depth
/// and is only valid on radially symmetric trees with no killing; `subtree`
/// keeps one entry per vertex.
enum class Layout { automatic, radial, subtree };

struct SolverOptions {
  double tol = 1e-10;
  std::size_t max_sweeps = 0;  // 0 picks 4 * depth + 16
  Execution execution = Execution::parallel;
  Layout layout = Layout::automatic;
  std::size_t max_vertices = 8'000'000;
};

struct SolveStats {
  std::size_t sweeps = 0;
  double max_width = 0.0;
  bool within_tol = false;
};

/// Brackets for F(x -> y), the probability that the walk started at x ever
/// hits the neighbor y, on every directed edge of a finite root-connected
/// domain (a ball, or a ball intersected with a killing set).
///
/// For a domain with killing, every derived quantity (hitting, green) is the
/// one of the walk killed on leaving the set.
class PotentialTable {
 public:
  /// Position inside the domain. `node` indexes the subtree layout and is
  /// unused by the radial layout.
  struct Cursor {
    std::uint32_t node = 0;
    std::uint32_t depth = 0;
  };

  const TreeModel& tree() const noexcept { return *tree_; }
  const std::shared_ptr<const TreeModel>& tree_ptr() const noexcept { return tree_; }
  std::size_t depth() const noexcept { return depth_; }
  double rho() const noexcept { return rho_; }
  Layout layout() const noexcept { return layout_; }
  bool killing() const noexcept { return killing_; }
  const SolveStats& stats() const noexcept { return stats_; }

  bool contains(const VertexId& v) const;
  std::optional<Cursor> locate(const VertexId& v) const;
  Cursor root() const noexcept { return Cursor{0, 0}; }
  std::optional<Cursor> child(Cursor c, std::uint32_t child_index) const;
  Cursor parent(Cursor c) const;

  /// F(v -> parent(v)) and F(parent(v) -> v) for non-root v.
  Bracket up(Cursor c) const { return up_[slot(c)]; }
  Bracket down(Cursor c) const { return down_[slot(c)]; }
  Bracket up(const VertexId& v) const;
  Bracket down(const VertexId& v) const;
  /// F(from -> to) for neighbors inside the domain.
  Bracket edge(const VertexId& from, const VertexId& to) const;

  /// Sum of p(v, z) F(z -> v) over children z outside the domain: zero for
  /// killed children and [0, rho] times their mass past the truncation depth.
  Bracket outside_return(Cursor c) const;

  /// Largest edge-bracket width among edges whose deeper endpoint is at depth k.
  double width_at_depth(std::size_t k) const;
  /// Largest k such that every edge with deeper endpoint at depth <= k has
  /// width <= width_tol.
  std::size_t certified_depth(double width_tol) const;

  /// Visits every in-domain directed edge (from, to, F) in breadth-first
  /// order, up to `max_depth`.
  void for_each_edge(std::size_t max_depth,
                     const std::function<void(const VertexId&, const VertexId&, Bracket)>& fn) const;

 private:
  friend class EdgeSolver;
  friend PotentialTable solve_radial(std::shared_ptr<const TreeModel>, std::size_t, const SolverOptions&);

  std::size_t slot(Cursor c) const noexcept { return layout_ == Layout::radial ? c.depth : c.node; }

  std::shared_ptr<const TreeModel> tree_;
  std::size_t depth_ = 0;
  double rho_ = 0.0;
  Layout layout_ = Layout::radial;
  bool killing_ = false;
  SolveStats stats_;
  std::shared_ptr<const SubtreeIndex> index_;
  std::vector<double> trunc_mass_;  // subtree: per node; radial: per depth
  std::vector<Bracket> up_;
  std::vector<Bracket> down_;
  std::vector<double> width_by_depth_;
};

/// One solver instance over a subtree domain; exposes single sweeps so the
/// bracket sequence can be inspected.
class EdgeSolver {
 public:
  /// `in_domain` classifies children outside the stored subtree: those past
  /// the depth limit for which it holds are truncated, all others killed.
  EdgeSolver(std::shared_ptr<const TreeModel> tree, std::shared_ptr<const SubtreeIndex> index,
             const std::function<bool(const VertexId&)>& in_domain, bool killing);

  /// One synchronous sweep over all directed edges. Returns whether any
  /// bracket changed.
  bool sweep(Execution exec);
  /// Serial reference sweep; identical results to the parallel one.
  bool sweep_serial() { return sweep(Execution::serial); }
  double max_width() const;
  std::size_t sweeps() const noexcept { return sweeps_; }

  PotentialTable snapshot(bool within_tol = false) const;

 private:
  void update(std::uint32_t i);

  PotentialTable table_;
  std::vector<double> p_up_;    // p(v, parent(v))
  std::vector<double> p_down_;  // p(parent(v), v)
  std::vector<Bracket> next_up_;
  std::vector<Bracket> next_down_;
  std::size_t sweeps_ = 0;
};

/// Solves the bracketing fixed point on the ball of radius `depth`:
///   F(x->y) = p(x,y) / (1 - sum_{z~x, z!=y} p(x,z) F(z->x)),
/// with F in [0, rho] on edges entering the ball from outside. Iterates until
/// all widths are <= tol or the brackets stop moving; throws SolverError when
/// the sweep budget runs out first.
PotentialTable solve_potential(std::shared_ptr<const TreeModel> tree, std::size_t depth,
                               const SolverOptions& options = {});

/// Same fixed point for the walk killed on leaving the tube of width c around
/// theta, truncated at `depth`.
PotentialTable green_tube(std::shared_ptr<const TreeModel> tree, const BoundaryRay& theta, std::size_t c,
                          std::size_t depth, const SolverOptions& options = {});

/// H(x, y): product of edge brackets along the geodesic; H(x, x) = 1.
Bracket hitting(const PotentialTable& table, const VertexId& x, const VertexId& y);
/// U(y) = sum_z p(y, z) F(z -> y).
Bracket return_probability(const PotentialTable& table, const VertexId& y);
/// G(y, y) = 1 / (1 - U(y)).
Bracket green_diagonal(const PotentialTable& table, const VertexId& y);
/// G(x, y) = H(x, y) G(y, y).
Bracket green(const PotentialTable& table, const VertexId& x, const VertexId& y);

}  // namespace treepot
