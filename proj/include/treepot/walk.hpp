#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "treepot/martin.hpp"
#include "treepot/rng.hpp"
#include "treepot/tree.hpp"

namespace treepot {

enum class Termination { horizon, absorbed, exited_set, truncated };
std::string_view to_string(Termination t);

/// A realized trajectory X_0, ..., X_n.
struct WalkPath {
  VertexId start;
  std::vector<VertexId> vertices;
  std::uint64_t stream = 0;
  Termination reason = Termination::horizon;

  std::size_t steps() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }
};

/// Returned by walk visitors after seeing X_k.
enum class Control { proceed, absorb, exit };

/// Slot drawn from a normalized row with one uniform variate.
inline std::uint32_t sample_slot(const KernelRow& row, double u) noexcept {
  double acc = 0.0;
  for (std::uint32_t s = 0; s + 1 < row.degree; ++s) {
    acc += row.p[s];
    if (u < acc) return s;
  }
  return row.degree - 1;
}

/// Plain walk from x (updated in place). `visit(k, X_k)` is called for
/// k = 0, 1, ... and may stop the walk.
template <class Visitor>
Termination run_plain(const TreeModel& t, VertexId& x, std::size_t horizon, RngStream& rng, Visitor&& visit) {
  for (std::size_t step = 0;; ++step) {
    switch (visit(step, static_cast<const VertexId&>(x))) {
      case Control::absorb: return Termination::absorbed;
      case Control::exit: return Termination::exited_set;
      case Control::proceed: break;
    }
    if (step == horizon) return Termination::horizon;
    x.step(sample_slot(t.row(x), rng.uniform()));
  }
}

/// Walk under p^theta. Stops with `truncated` once a step would need edge
/// brackets deeper than `certified_depth`.
template <class Visitor>
Termination run_conditioned(const MartinKernel& kernel, VertexId& x, std::size_t horizon, RngStream& rng,
                            std::size_t certified_depth, Visitor&& visit) {
  const PotentialTable& table = kernel.table();
  const BoundaryRay& ray = kernel.ray();
  auto located = table.locate(x);
  if (!located) return Termination::truncated;
  PotentialTable::Cursor cx = *located;
  std::size_t meet = ray.meet_depth(x);
  for (std::size_t step = 0;; ++step) {
    switch (visit(step, static_cast<const VertexId&>(x))) {
      case Control::absorb: return Termination::absorbed;
      case Control::exit: return Termination::exited_set;
      case Control::proceed: break;
    }
    if (step == horizon) return Termination::horizon;
    if (x.depth() + 1 > certified_depth) return Termination::truncated;
    const bool on_ray = meet == x.depth();
    auto row = conditioned_row(kernel, x, cx, on_ray);
    if (!row) return Termination::truncated;
    const std::uint32_t slot = sample_slot(row->row, rng.uniform());
    if (!x.is_root() && slot == 0) {
      x.pop();
      cx = table.parent(cx);
      meet = std::min(meet, x.depth());
    } else {
      const std::uint32_t c = x.is_root() ? slot : slot - 1;
      const bool stays_on_ray = on_ray && c == ray.index(x.depth());
      cx = *table.child(cx, c);
      x.push(c);
      if (stays_on_ray) meet = x.depth();
    }
  }
}

/// N steps of the plain chain.
WalkPath simulate(const TreeModel& t, const VertexId& x0, std::size_t horizon, RngStream& rng);

/// N steps of the theta-conditioned chain, truncated (and flagged) where the
/// edge brackets are wider than `width_tol`.
WalkPath simulate_conditioned(const MartinKernel& kernel, const VertexId& x0, std::size_t horizon, RngStream& rng,
                              double width_tol = 1e-9);

/// First index with X_k outside the set, if any.
std::optional<std::size_t> exit_time(const WalkPath& path, const std::function<bool(const VertexId&)>& in_set);

/// Exact first-hitting law of the radius-`radius` sphere from x (|x| < radius),
/// in breadth-first sphere order.
std::vector<std::pair<VertexId, double>> sphere_exit_distribution(const TreeModel& t, const VertexId& x,
                                                                   std::size_t radius,
                                                                   std::size_t max_vertices = 4'000'000);

/// Runs the plain walk from x0 until it first reaches distance `depth` from
/// the root and returns the geodesic to that vertex as a ray prefix. Throws
/// HorizonError if `horizon` steps do not suffice.
BoundaryRay sample_boundary(const TreeModel& t, const VertexId& x0, std::size_t depth, RngStream& rng,
                            std::size_t horizon = 1'000'000);

}  // namespace treepot
