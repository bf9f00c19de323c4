#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "treepot/potential.hpp"

namespace treepot {

/// K_theta(y) = H(y, pi(y)) / H(o, pi(y)), pi the projection on the ray of
/// theta. Harmonic, with K_theta(o) = 1.
class MartinKernel {
 public:
  MartinKernel(std::shared_ptr<const PotentialTable> table, BoundaryRay theta);

  Bracket value(const VertexId& y) const;
  double operator()(const VertexId& y) const { return value(y).mid(); }

  const PotentialTable& table() const noexcept { return *table_; }
  const std::shared_ptr<const PotentialTable>& table_ptr() const noexcept { return table_; }
  const BoundaryRay& ray() const noexcept { return theta_; }
  const TreeModel& tree() const noexcept { return table_->tree(); }

 private:
  std::shared_ptr<const PotentialTable> table_;
  BoundaryRay theta_;
};

/// One-step law of the h-transformed chain p^theta(x, y) = K(y)/K(x) p(x, y).
struct ConditionedLaw {
  std::vector<VertexId> neighbors;
  std::vector<double> probs;  // midpoint ratios renormalized to sum 1
  double defect = 0.0;        // sum of midpoint ratios minus one, before renormalizing
  double defect_bound = 0.0;  // sum of p(x, y) times the width of K(y)/K(x)
};

ConditionedLaw conditioned_kernel(const MartinKernel& kernel, const VertexId& x);

/// Same law from the edge brackets at x alone: the neighbor toward theta gets
/// p(x, w) / F(x -> w), every other neighbor p(x, w) F(w -> x). Midpoints,
/// renormalized. Returns nullopt when an edge at x is outside the table.
struct ConditionedRow {
  KernelRow row;
  double defect = 0.0;
};
std::optional<ConditionedRow> conditioned_row(const MartinKernel& kernel, const VertexId& x,
                                              PotentialTable::Cursor cx, bool on_ray);

/// G(o, y) K_theta(y) computed directly and as H(y, pi) H(pi, y) G(y, y),
/// against the bound 3 eps^2 eps^(2c).
struct LowerBoundProduct {
  Bracket direct;
  Bracket via_projection;
  double bound = 0.0;
  std::size_t tube_distance = 0;
  bool identity_holds = false;
  bool bound_applies = false;
  bool bound_holds = false;
};

LowerBoundProduct lower_bound_product(const MartinKernel& kernel, const VertexId& y, std::size_t c);

}  // namespace treepot
