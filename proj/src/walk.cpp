#include "treepot/walk.hpp"

#include "treepot/errors.hpp"
#include "treepot/linear.hpp"

namespace treepot {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::horizon: return "horizon";
    case Termination::absorbed: return "absorbed";
    case Termination::exited_set: return "exited-set";
    case Termination::truncated: return "truncated";
  }
  return "unknown";
}

WalkPath simulate(const TreeModel& t, const VertexId& x0, std::size_t horizon, RngStream& rng) {
  t.check(x0);
  WalkPath path;
  path.start = x0;
  path.vertices.reserve(horizon + 1);
  VertexId x = x0;
  path.reason = run_plain(t, x, horizon, rng, [&](std::size_t, const VertexId& v) {
    path.vertices.push_back(v);
    return Control::proceed;
  });
  return path;
}

WalkPath simulate_conditioned(const MartinKernel& kernel, const VertexId& x0, std::size_t horizon, RngStream& rng,
                              double width_tol) {
  kernel.tree().check(x0);
  WalkPath path;
  path.start = x0;
  VertexId x = x0;
  const std::size_t cert = kernel.table().certified_depth(width_tol);
  path.reason = run_conditioned(kernel, x, horizon, rng, cert, [&](std::size_t, const VertexId& v) {
    path.vertices.push_back(v);
    return Control::proceed;
  });
  return path;
}

std::optional<std::size_t> exit_time(const WalkPath& path, const std::function<bool(const VertexId&)>& in_set) {
  for (std::size_t k = 0; k < path.vertices.size(); ++k) {
    if (!in_set(path.vertices[k])) return k;
  }
  return std::nullopt;
}

std::vector<std::pair<VertexId, double>> sphere_exit_distribution(const TreeModel& t, const VertexId& x,
                                                                   std::size_t radius, std::size_t max_vertices) {
  t.check(x);
  if (radius < 1) throw std::invalid_argument("sphere radius must be at least 1");
  if (x.depth() >= radius) throw std::invalid_argument("start must lie strictly inside the sphere");
  const auto ball = ball_enumerate(t, radius);
  if (ball.size() > max_vertices) throw ResourceError("sphere-exit ball exceeds the vertex cap");
  std::vector<VertexId> interior;
  for (const auto& v : ball) {
    if (v.depth() < radius) interior.push_back(v);
  }
  ForestSystem system(t, std::move(interior), max_vertices);
  std::vector<double> b(system.size(), 0.0);
  b[*system.find(x)] = 1.0;
  // Expected visits before absorption, G_B(x, .), then one step out.
  const auto visits = system.solve_direct(b, ForestSystem::Orientation::row);
  std::vector<std::pair<VertexId, double>> out;
  for (const auto& s : ball) {
    if (s.depth() != radius) continue;
    const VertexId par = s.parent();
    out.emplace_back(s, visits[*system.find(par)] * t.row(par).p[par.child_slot(s.last())]);
  }
  return out;
}

BoundaryRay sample_boundary(const TreeModel& t, const VertexId& x0, std::size_t depth, RngStream& rng,
                            std::size_t horizon) {
  t.check(x0);
  if (depth < 1) throw std::invalid_argument("boundary sampling depth must be at least 1");
  VertexId x = x0;
  const Termination end = run_plain(t, x, horizon, rng, [depth](std::size_t, const VertexId& v) {
    return v.depth() == depth ? Control::absorb : Control::proceed;
  });
  if (end != Termination::absorbed) {
    throw HorizonError("walk did not reach depth " + std::to_string(depth) + " within " + std::to_string(horizon) +
                       " steps");
  }
  return BoundaryRay(std::vector<std::uint32_t>(x.word().begin(), x.word().end()));
}

}  // namespace treepot
