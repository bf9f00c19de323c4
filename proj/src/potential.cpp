#include "treepot/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "treepot/errors.hpp"

namespace treepot {

namespace {

std::size_t sweep_budget(std::size_t depth, const SolverOptions& options) {
  return options.max_sweeps != 0 ? options.max_sweeps : 4 * depth + 16;
}

void check_solver_args(std::size_t depth, const SolverOptions& options) {
  if (depth < 1) throw std::invalid_argument("solver depth must be at least 1");
  if (!(options.tol > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
}

// Runs sweeps until nothing moves or every width is within tol.
template <class Sweep, class Width>
SolveStats iterate(Sweep&& sweep, Width&& width, std::size_t depth, const SolverOptions& options) {
  const std::size_t budget = sweep_budget(depth, options);
  double w = width();
  for (std::size_t s = 1; s <= budget; ++s) {
    const bool changed = sweep();
    w = width();
    if (!changed || w <= options.tol) return SolveStats{s, w, w <= options.tol};
  }
  std::ostringstream msg;
  msg << "edge brackets still moving after " << budget << " sweeps; worst width " << w;
  throw SolverError(msg.str(), w);
}

inline Bracket relax(const Bracket& old, double p, double sum_low, double sum_high) {
  return {std::max(old.low, p / (1.0 - sum_low)), std::min(old.high, p / (1.0 - sum_high))};
}

}  // namespace

// Radial layout: entry k holds the edges between depth k-1 and depth k. The
// arithmetic mirrors EdgeSolver::update term for term, so both layouts give
// bitwise-identical brackets on radially symmetric trees.
PotentialTable solve_radial(std::shared_ptr<const TreeModel> tree, std::size_t depth, const SolverOptions& options) {
  const std::uint32_t d = tree->spec().degree;
  const double p = 1.0 / d;
  PotentialTable table;
  table.tree_ = tree;
  table.depth_ = depth;
  table.rho_ = tree->rho();
  table.layout_ = Layout::radial;
  const double rho = table.rho_;

  table.trunc_mass_.assign(depth + 1, 0.0);
  for (std::uint32_t j = 0; j + 1 < d; ++j) table.trunc_mass_[depth] += p;
  table.up_.assign(depth + 1, Bracket{0.0, rho});
  table.down_.assign(depth + 1, Bracket{0.0, rho});
  table.up_[0] = table.down_[0] = Bracket{};
  std::vector<Bracket> next_up = table.up_;
  std::vector<Bracket> next_down = table.down_;
  const auto& trunc = table.trunc_mass_;

  auto sweep = [&] {
    const auto& up = table.up_;
    const auto& down = table.down_;
    bool changed = false;
    for (std::size_t k = 1; k <= depth; ++k) {
      double sl = 0.0;
      double sh = 0.0;
      if (k < depth) {
        for (std::uint32_t j = 0; j + 1 < d; ++j) {
          sl += p * up[k + 1].low;
          sh += p * up[k + 1].high;
        }
      }
      sh += trunc[k] * rho;
      next_up[k] = relax(up[k], p, sl, sh);

      sl = 0.0;
      sh = 0.0;
      if (k >= 2) {
        sl = p * down[k - 1].low;
        sh = p * down[k - 1].high;
      }
      const std::uint32_t siblings = k == 1 ? d - 1 : d - 2;
      for (std::uint32_t j = 0; j < siblings; ++j) {
        sl += p * up[k].low;
        sh += p * up[k].high;
      }
      sh += trunc[k - 1] * rho;
      next_down[k] = relax(down[k], p, sl, sh);
      changed = changed || next_up[k] != up[k] || next_down[k] != down[k];
    }
    table.up_.swap(next_up);
    table.down_.swap(next_down);
    return changed;
  };
  auto width = [&] {
    double w = 0.0;
    for (std::size_t k = 1; k <= depth; ++k) w = std::max({w, table.up_[k].width(), table.down_[k].width()});
    return w;
  };
  table.stats_ = iterate(sweep, width, depth, options);
  table.width_by_depth_.assign(depth + 1, 0.0);
  for (std::size_t k = 1; k <= depth; ++k) {
    table.width_by_depth_[k] = std::max(table.up_[k].width(), table.down_[k].width());
  }
  return table;
}

EdgeSolver::EdgeSolver(std::shared_ptr<const TreeModel> tree, std::shared_ptr<const SubtreeIndex> index,
                       const std::function<bool(const VertexId&)>& in_domain, bool killing) {
  const std::size_t n = index->size();
  table_.tree_ = tree;
  table_.depth_ = index->max_depth();
  table_.rho_ = tree->rho();
  table_.layout_ = Layout::subtree;
  table_.killing_ = killing;
  table_.index_ = index;
  table_.trunc_mass_.assign(n, 0.0);
  table_.up_.assign(n, Bracket{0.0, table_.rho_});
  table_.down_.assign(n, Bracket{0.0, table_.rho_});
  table_.up_[0] = table_.down_[0] = Bracket{};
  p_up_.assign(n, 0.0);
  p_down_.assign(n, 0.0);

  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& node = index->node(i);
    VertexId v = index->vertex(i);
    const KernelRow row = tree->row(v);
    if (i != 0) p_up_[i] = row.p[0];
    const std::uint32_t count = tree->children(v);
    std::uint32_t k = node.first_child;
    const std::uint32_t end = node.first_child + node.n_children;
    for (std::uint32_t c = 0; c < count; ++c) {
      const double pc = row.p[v.child_slot(c)];
      if (k < end && index->node(k).child_index == c) {
        p_down_[k++] = pc;
        continue;
      }
      if (node.depth + 1 > table_.depth_) {
        v.push(c);
        if (in_domain(v)) table_.trunc_mass_[i] += pc;
        v.pop();
      }
    }
  }
  next_up_ = table_.up_;
  next_down_ = table_.down_;
}

void EdgeSolver::update(std::uint32_t i) {
  const auto& nodes = table_.index_->nodes();
  const auto& up = table_.up_;
  const auto& down = table_.down_;
  const auto& trunc = table_.trunc_mass_;
  const double rho = table_.rho_;
  const auto& node = nodes[i];

  double sl = 0.0;
  double sh = 0.0;
  for (std::uint32_t k = node.first_child; k < node.first_child + node.n_children; ++k) {
    sl += p_down_[k] * up[k].low;
    sh += p_down_[k] * up[k].high;
  }
  sh += trunc[i] * rho;
  next_up_[i] = relax(up[i], p_up_[i], sl, sh);

  const std::uint32_t par = node.parent;
  const auto& pnode = nodes[par];
  sl = 0.0;
  sh = 0.0;
  if (par != 0) {
    sl = p_up_[par] * down[par].low;
    sh = p_up_[par] * down[par].high;
  }
  for (std::uint32_t k = pnode.first_child; k < pnode.first_child + pnode.n_children; ++k) {
    if (k == i) continue;
    sl += p_down_[k] * up[k].low;
    sh += p_down_[k] * up[k].high;
  }
  sh += trunc[par] * rho;
  next_down_[i] = relax(down[i], p_down_[i], sl, sh);
}

bool EdgeSolver::sweep(Execution exec) {
  const auto n = static_cast<std::int64_t>(table_.up_.size());
  bool changed = false;
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static) reduction(|| : changed)
    for (std::int64_t i = 1; i < n; ++i) {
      const auto u = static_cast<std::uint32_t>(i);
      update(u);
      changed = changed || next_up_[u] != table_.up_[u] || next_down_[u] != table_.down_[u];
    }
  } else {
    for (std::int64_t i = 1; i < n; ++i) {
      const auto u = static_cast<std::uint32_t>(i);
      update(u);
      changed = changed || next_up_[u] != table_.up_[u] || next_down_[u] != table_.down_[u];
    }
  }
  table_.up_.swap(next_up_);
  table_.down_.swap(next_down_);
  ++sweeps_;
  return changed;
}

double EdgeSolver::max_width() const {
  double w = 0.0;
  for (std::size_t i = 1; i < table_.up_.size(); ++i) {
    w = std::max({w, table_.up_[i].width(), table_.down_[i].width()});
  }
  return w;
}

PotentialTable EdgeSolver::snapshot(bool within_tol) const {
  PotentialTable out = table_;
  out.stats_.sweeps = sweeps_;
  out.stats_.max_width = max_width();
  out.stats_.within_tol = within_tol;
  out.width_by_depth_.assign(out.depth_ + 1, 0.0);
  const auto& nodes = out.index_->nodes();
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    auto& w = out.width_by_depth_[nodes[i].depth];
    w = std::max({w, out.up_[i].width(), out.down_[i].width()});
  }
  return out;
}

PotentialTable solve_potential(std::shared_ptr<const TreeModel> tree, std::size_t depth,
                               const SolverOptions& options) {
  check_solver_args(depth, options);
  Layout layout = options.layout;
  if (layout == Layout::automatic) layout = tree->radially_symmetric() ? Layout::radial : Layout::subtree;
  if (layout == Layout::radial) {
    if (!tree->radially_symmetric()) throw std::invalid_argument("radial layout needs a radially symmetric tree");
    return solve_radial(std::move(tree), depth, options);
  }
  auto index = std::make_shared<const SubtreeIndex>(SubtreeIndex::ball(*tree, depth, options.max_vertices));
  EdgeSolver solver(tree, index, [](const VertexId&) { return true; }, false);
  SolveStats stats = iterate([&] { return solver.sweep(options.execution); }, [&] { return solver.max_width(); },
                             depth, options);
  return solver.snapshot(stats.within_tol);
}

PotentialTable green_tube(std::shared_ptr<const TreeModel> tree, const BoundaryRay& theta, std::size_t c,
                          std::size_t depth, const SolverOptions& options) {
  check_solver_args(depth, options);
  auto in_tube = [&theta, c](const VertexId& v) { return ray_distance(theta, v) <= c; };
  auto index = std::make_shared<const SubtreeIndex>(SubtreeIndex::grow(*tree, depth, in_tube, options.max_vertices));
  EdgeSolver solver(tree, index, in_tube, true);
  SolveStats stats = iterate([&] { return solver.sweep(options.execution); }, [&] { return solver.max_width(); },
                             depth, options);
  return solver.snapshot(stats.within_tol);
}

bool PotentialTable::contains(const VertexId& v) const { return locate(v).has_value(); }

std::optional<PotentialTable::Cursor> PotentialTable::locate(const VertexId& v) const {
  if (v.depth() > depth_) return std::nullopt;
  if (layout_ == Layout::radial) {
    if (!tree_->valid(v)) return std::nullopt;
    return Cursor{0, static_cast<std::uint32_t>(v.depth())};
  }
  auto i = index_->locate(v);
  if (!i) return std::nullopt;
  return Cursor{*i, static_cast<std::uint32_t>(v.depth())};
}

std::optional<PotentialTable::Cursor> PotentialTable::child(Cursor c, std::uint32_t child_index) const {
  if (c.depth + 1 > depth_) return std::nullopt;
  if (layout_ == Layout::radial) {
    const std::uint32_t d = tree_->spec().degree;
    if (child_index >= (c.depth == 0 ? d : d - 1)) return std::nullopt;
    return Cursor{0, c.depth + 1};
  }
  const std::uint32_t k = index_->child(c.node, child_index);
  if (k == SubtreeIndex::kNone) return std::nullopt;
  return Cursor{k, c.depth + 1};
}

PotentialTable::Cursor PotentialTable::parent(Cursor c) const {
  if (layout_ == Layout::radial) return Cursor{0, c.depth - 1};
  return Cursor{index_->node(c.node).parent, c.depth - 1};
}

Bracket PotentialTable::up(const VertexId& v) const {
  auto c = locate(v);
  if (!c || v.is_root()) throw RangeError("no upward edge stored for " + v.to_string());
  return up(*c);
}

Bracket PotentialTable::down(const VertexId& v) const {
  auto c = locate(v);
  if (!c || v.is_root()) throw RangeError("no downward edge stored for " + v.to_string());
  return down(*c);
}

Bracket PotentialTable::edge(const VertexId& from, const VertexId& to) const {
  if (!is_neighbor(from, to)) throw AddressError(from.to_string() + " and " + to.to_string() + " are not neighbors");
  return to.depth() < from.depth() ? up(from) : down(to);
}

Bracket PotentialTable::outside_return(Cursor c) const {
  return Bracket{0.0, trunc_mass_[slot(c)] * rho_};
}

double PotentialTable::width_at_depth(std::size_t k) const {
  return k < width_by_depth_.size() ? width_by_depth_[k] : 0.0;
}

std::size_t PotentialTable::certified_depth(double width_tol) const {
  std::size_t k = 0;
  while (k + 1 <= depth_ && width_by_depth_[k + 1] <= width_tol) ++k;
  return k;
}

void PotentialTable::for_each_edge(std::size_t max_depth,
                                   const std::function<void(const VertexId&, const VertexId&, Bracket)>& fn) const {
  const std::size_t limit = std::min(max_depth, depth_);
  if (layout_ == Layout::radial) {
    for (const auto& v : ball_enumerate(*tree_, limit)) {
      if (v.is_root()) continue;
      const VertexId par = v.parent();
      fn(v, par, up_[v.depth()]);
      fn(par, v, down_[v.depth()]);
    }
    return;
  }
  for (std::uint32_t i = 1; i < index_->size(); ++i) {
    if (index_->node(i).depth > limit) break;
    const VertexId v = index_->vertex(i);
    const VertexId par = v.parent();
    fn(v, par, up_[i]);
    fn(par, v, down_[i]);
  }
}

Bracket hitting(const PotentialTable& table, const VertexId& x, const VertexId& y) {
  auto cx = table.locate(x);
  auto cy = table.locate(y);
  if (!cx) throw RangeError(x.to_string() + " is outside the solved domain");
  if (!cy) throw RangeError(y.to_string() + " is outside the solved domain");
  const std::size_t lca = common_prefix(x, y);
  Bracket ascent = Bracket::exact(1.0);
  for (auto c = *cx; c.depth > lca; c = table.parent(c)) ascent = ascent * table.up(c);
  Bracket descent = Bracket::exact(1.0);
  for (auto c = *cy; c.depth > lca; c = table.parent(c)) descent = descent * table.down(c);
  return ascent * descent;
}

Bracket return_probability(const PotentialTable& table, const VertexId& y) {
  auto cy = table.locate(y);
  if (!cy) throw RangeError(y.to_string() + " is outside the solved domain");
  const KernelRow row = table.tree().row(y);
  Bracket u = Bracket::exact(0.0);
  if (!y.is_root()) u = row.p[0] * table.down(*cy);
  const std::uint32_t count = table.tree().children(y);
  for (std::uint32_t c = 0; c < count; ++c) {
    if (auto cc = table.child(*cy, c)) u = u + row.p[y.child_slot(c)] * table.up(*cc);
  }
  return u + table.outside_return(*cy);
}

Bracket green_diagonal(const PotentialTable& table, const VertexId& y) {
  const Bracket u = return_probability(table, y);
  if (u.high >= 1.0) throw BracketError("return-probability bracket reaches 1 at " + y.to_string());
  return {1.0 / (1.0 - u.low), 1.0 / (1.0 - u.high)};
}

Bracket green(const PotentialTable& table, const VertexId& x, const VertexId& y) {
  return hitting(table, x, y) * green_diagonal(table, y);
}

}  // namespace treepot
