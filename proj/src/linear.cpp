#include "treepot/linear.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "treepot/errors.hpp"

namespace treepot {

ForestSystem::ForestSystem(const TreeModel& t, std::vector<VertexId> vertices, std::size_t cap)
    : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end(), [](const VertexId& a, const VertexId& b) {
    return a.depth() != b.depth() ? a.depth() < b.depth() : a < b;
  });
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  if (vertices_.size() > cap) throw ResourceError("vertex set exceeds " + std::to_string(cap) + " vertices");
  const std::size_t n = vertices_.size();
  where_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.check(vertices_[i]);
    where_.emplace(vertices_[i], i);
  }
  parent_.assign(n, kNone);
  children_.assign(n, {});
  p_up_.assign(n, 0.0);
  p_down_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const VertexId& v = vertices_[i];
    if (v.is_root()) continue;
    auto it = where_.find(v.parent());
    if (it == where_.end()) continue;
    const std::size_t par = it->second;
    parent_[i] = par;
    children_[par].push_back(i);
    p_up_[i] = t.row(v).p[0];
    p_down_[i] = t.row(vertices_[par]).p[vertices_[par].child_slot(v.last())];
  }
}

std::optional<std::size_t> ForestSystem::find(const VertexId& v) const {
  auto it = where_.find(v);
  if (it == where_.end()) return std::nullopt;
  return it->second;
}

double ForestSystem::residual(std::span<const double> g, std::span<const double> b, Orientation o) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double r = g[i] - b[i];
    if (parent_[i] != kNone) r -= to_parent(i, o) * g[parent_[i]];
    for (std::size_t k : children_[i]) r -= to_child(k, o) * g[k];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

std::vector<double> ForestSystem::solve_iterative(std::span<const double> b, Orientation o, double tol,
                                                  std::size_t max_iterations, IterationInfo* info) const {
  std::vector<double> g(b.begin(), b.end());
  IterationInfo local;
  for (local.iterations = 1; local.iterations <= max_iterations; ++local.iterations) {
    for (std::size_t i = 0; i < size(); ++i) {
      double v = b[i];
      if (parent_[i] != kNone) v += to_parent(i, o) * g[parent_[i]];
      for (std::size_t k : children_[i]) v += to_child(k, o) * g[k];
      g[i] = v;
    }
    local.residual = residual(g, b, o);
    if (local.residual <= tol) {
      local.converged = true;
      break;
    }
  }
  local.iterations = std::min(local.iterations, max_iterations);
  if (info) *info = local;
  return g;
}

std::vector<double> ForestSystem::solve_direct(std::span<const double> b, Orientation o) const {
  const std::size_t n = size();
  // g_i = alpha_i + beta_i g_parent(i), eliminated leaves first.
  std::vector<double> alpha(n), beta(n), g(n);
  for (std::size_t i = n; i-- > 0;) {
    double den = 1.0;
    double num = b[i];
    for (std::size_t k : children_[i]) {
      den -= to_child(k, o) * beta[k];
      num += to_child(k, o) * alpha[k];
    }
    alpha[i] = num / den;
    beta[i] = parent_[i] != kNone ? to_parent(i, o) / den : 0.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = alpha[i] + (parent_[i] != kNone ? beta[i] * g[parent_[i]] : 0.0);
  }
  return g;
}

RestrictedGreen::RestrictedGreen(const TreeModel& t, std::vector<VertexId> set, LinearOptions options)
    : system_(t, std::move(set), options.max_vertices), options_(options) {}

std::vector<double> RestrictedGreen::solve(std::size_t unit, ForestSystem::Orientation o) const {
  std::vector<double> b(system_.size(), 0.0);
  b[unit] = 1.0;
  ForestSystem::IterationInfo info;
  auto g = system_.solve_iterative(b, o, options_.residual_tol, options_.max_iterations, &info);
  if (info.converged) return g;
  if (system_.size() <= options_.direct_limit) return system_.solve_direct(b, o);
  std::ostringstream msg;
  msg << "restricted Green iteration stalled at residual " << info.residual << " on " << system_.size()
      << " vertices";
  throw SolverError(msg.str(), info.residual);
}

std::vector<double> RestrictedGreen::column(const VertexId& y) const {
  auto j = system_.find(y);
  if (!j) throw RangeError(y.to_string() + " is not in the set");
  return solve(*j, ForestSystem::Orientation::column);
}

std::vector<double> RestrictedGreen::row(const VertexId& x) const {
  auto i = system_.find(x);
  if (!i) throw RangeError(x.to_string() + " is not in the set");
  return solve(*i, ForestSystem::Orientation::row);
}

double RestrictedGreen::operator()(const VertexId& x, const VertexId& y) const {
  auto i = system_.find(x);
  if (!i) throw RangeError(x.to_string() + " is not in the set");
  return column(y)[*i];
}

double green_restricted(const TreeModel& t, std::vector<VertexId> set, const VertexId& x, const VertexId& y,
                        const LinearOptions& options) {
  return RestrictedGreen(t, std::move(set), options)(x, y);
}

std::vector<double> solve_ball_dirichlet(const TreeModel& t, std::size_t radius,
                                         const std::function<double(const VertexId&)>& boundary,
                                         std::size_t max_vertices) {
  if (radius < 1) throw std::invalid_argument("Dirichlet ball radius must be at least 1");
  const std::vector<VertexId> ball = ball_enumerate(t, radius);
  if (ball.size() > max_vertices) throw ResourceError("Dirichlet ball exceeds the vertex cap");
  std::vector<VertexId> interior;
  for (const auto& v : ball) {
    if (v.depth() < radius) interior.push_back(v);
  }
  ForestSystem system(t, interior, max_vertices);
  std::vector<double> b(system.size(), 0.0);
  for (std::size_t i = 0; i < system.size(); ++i) {
    const VertexId& v = system.vertices()[i];
    if (v.depth() + 1 != radius) continue;
    const KernelRow row = t.row(v);
    const std::uint32_t n = t.children(v);
    for (std::uint32_t c = 0; c < n; ++c) b[i] += row.p[v.child_slot(c)] * boundary(v.child(c));
  }
  const auto inside = system.solve_direct(b, ForestSystem::Orientation::column);
  std::vector<double> out(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) {
    out[i] = ball[i].depth() < radius ? inside[*system.find(ball[i])] : boundary(ball[i]);
  }
  return out;
}

}  // namespace treepot
