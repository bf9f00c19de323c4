#include "treepot/martin.hpp"

#include <cmath>

#include "treepot/errors.hpp"

namespace treepot {

MartinKernel::MartinKernel(std::shared_ptr<const PotentialTable> table, BoundaryRay theta)
    : table_(std::move(table)), theta_(std::move(theta)) {
  if (table_->killing()) throw std::invalid_argument("Martin kernel needs an unrestricted table");
  table_->tree().check(theta_.vertex(theta_.recorded_depth()));
}

Bracket MartinKernel::value(const VertexId& y) const {
  auto cy = table_->locate(y);
  if (!cy) throw RangeError(y.to_string() + " is outside the solved ball");
  const std::size_t meet = theta_.meet_depth(y);
  Bracket to_ray = Bracket::exact(1.0);
  auto c = *cy;
  for (; c.depth > meet; c = table_->parent(c)) to_ray = to_ray * table_->up(c);
  Bracket from_root = Bracket::exact(1.0);
  for (; c.depth > 0; c = table_->parent(c)) from_root = from_root * table_->down(c);
  return to_ray / from_root;
}

ConditionedLaw conditioned_kernel(const MartinKernel& kernel, const VertexId& x) {
  const TreeModel& tree = kernel.tree();
  tree.check(x);
  ConditionedLaw law;
  law.neighbors = tree.neighbors(x);
  const KernelRow row = tree.row(x);
  const Bracket kx = kernel.value(x);
  double sum = 0.0;
  for (std::size_t s = 0; s < law.neighbors.size(); ++s) {
    const Bracket kw = kernel.value(law.neighbors[s]);
    const double q = row.p[s] * kw.mid() / kx.mid();
    law.probs.push_back(q);
    sum += q;
    law.defect_bound += row.p[s] * (kw / kx).width();
  }
  law.defect = sum - 1.0;
  for (double& q : law.probs) q /= sum;
  return law;
}

std::optional<ConditionedRow> conditioned_row(const MartinKernel& kernel, const VertexId& x,
                                              PotentialTable::Cursor cx, bool on_ray) {
  const PotentialTable& table = kernel.table();
  const KernelRow base = kernel.tree().row(x);
  ConditionedRow out;
  out.row.degree = base.degree;
  double sum = 0.0;
  std::uint32_t slot = 0;
  if (!x.is_root()) {
    // The parent is toward theta exactly when x is off the ray.
    const double q = on_ray ? base.p[0] * table.down(cx).mid() : base.p[0] / table.up(cx).mid();
    out.row.p[slot++] = q;
    sum += q;
  }
  const std::uint32_t toward = on_ray ? kernel.ray().index(x.depth()) : SubtreeIndex::kNone;
  for (std::uint32_t c = 0; slot < base.degree; ++c, ++slot) {
    auto cc = table.child(cx, c);
    if (!cc) return std::nullopt;
    const double q = c == toward ? base.p[slot] / table.down(*cc).mid() : base.p[slot] * table.up(*cc).mid();
    out.row.p[slot] = q;
    sum += q;
  }
  out.defect = sum - 1.0;
  for (std::uint32_t s = 0; s < base.degree; ++s) out.row.p[s] /= sum;
  return out;
}

LowerBoundProduct lower_bound_product(const MartinKernel& kernel, const VertexId& y, std::size_t c) {
  const PotentialTable& table = kernel.table();
  const VertexId pi = y.prefix(kernel.ray().meet_depth(y));
  LowerBoundProduct out;
  out.direct = green(table, VertexId::root(), y) * kernel.value(y);
  out.via_projection = hitting(table, y, pi) * hitting(table, pi, y) * green_diagonal(table, y);
  const double eps = table.tree().spec().epsilon;
  out.bound = 3.0 * eps * eps * std::pow(eps, 2.0 * static_cast<double>(c));
  out.tube_distance = y.depth() - pi.depth();
  const double gap = std::abs(out.direct.mid() - out.via_projection.mid());
  const double scale = std::max(out.direct.high, out.via_projection.high);
  out.identity_holds = gap <= out.direct.width() + out.via_projection.width() + 1e-14 * scale;
  out.bound_applies = out.tube_distance <= c;
  out.bound_holds = !out.bound_applies || std::min(out.direct.low, out.via_projection.low) >= out.bound;
  return out;
}

}  // namespace treepot
