#include "treepot/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "treepot/errors.hpp"
#include "treepot/linear.hpp"

namespace treepot {

HarmonicFunction HarmonicFunction::constant(double value) {
  HarmonicFunction u;
  u.constant_ = value;
  return u;
}

HarmonicFunction HarmonicFunction::martin(std::vector<Term> terms, double constant, double width_tol) {
  HarmonicFunction u;
  u.constant_ = constant;
  u.terms_ = std::move(terms);
  for (const auto& term : u.terms_) {
    u.domain_depth_ = std::min(u.domain_depth_, term.kernel.table().certified_depth(width_tol));
  }
  return u;
}

HarmonicFunction HarmonicFunction::ball_dirichlet(std::shared_ptr<const TreeModel> tree, std::size_t radius,
                                                  const VertexFunction& boundary) {
  HarmonicFunction u;
  u.kind_ = Kind::ball_dirichlet;
  u.domain_depth_ = radius;
  u.ball_values_ = solve_ball_dirichlet(*tree, radius, boundary);
  u.ball_ = std::make_shared<const SubtreeIndex>(SubtreeIndex::ball(*tree, radius, u.ball_values_.size()));
  u.tree_ = std::move(tree);
  return u;
}

double HarmonicFunction::operator()(const VertexId& x) const {
  if (x.depth() > domain_depth_) {
    throw RangeError("harmonic function evaluated at " + x.to_string() + " beyond its domain depth " +
                     std::to_string(domain_depth_));
  }
  if (kind_ == Kind::ball_dirichlet) {
    // Both orders are breadth-first with children ascending, so they match.
    auto i = ball_->locate(x);
    if (!i) throw AddressError("no such vertex: " + x.to_string());
    return ball_values_[*i];
  }
  double value = constant_;
  for (const auto& term : terms_) value += term.weight * term.kernel(x);
  return value;
}

double HarmonicFunction::harmonicity_bound(const VertexId& x) const {
  if (kind_ == Kind::ball_dirichlet) return 0.0;
  double bound = 0.0;
  for (const auto& term : terms_) {
    const TreeModel& t = term.kernel.tree();
    const KernelRow row = t.row(x);
    const auto nbrs = t.neighbors(x);
    double w = term.kernel.value(x).width();
    for (std::size_t s = 0; s < nbrs.size(); ++s) w += row.p[s] * term.kernel.value(nbrs[s]).width();
    bound += std::abs(term.weight) * w;
  }
  return bound;
}

double laplacian(const TreeModel& t, const VertexFunction& f, const VertexId& x) {
  const KernelRow row = t.row(x);
  double mean = 0.0;
  VertexId y = x;
  for (std::uint32_t s = 0; s < row.degree; ++s) {
    y = x;
    y.step(s);
    mean += row.p[s] * f(y);
  }
  return mean - f(x);
}

double laplacian_of_square(const TreeModel& t, const VertexFunction& f, const VertexId& x) {
  const KernelRow row = t.row(x);
  double mean = 0.0;
  VertexId y;
  for (std::uint32_t s = 0; s < row.degree; ++s) {
    y = x;
    y.step(s);
    const double v = f(y);
    mean += row.p[s] * v * v;
  }
  const double fx = f(x);
  return mean - fx * fx;
}

namespace {

// Per-depth sums of g over the tube, cumulated.
std::vector<double> tube_partial_sums(const TreeModel& t, const BoundaryRay& theta, std::size_t c, std::size_t depth,
                                      const std::function<double(const VertexId&)>& g) {
  std::vector<double> by_depth(depth + 1, 0.0);
  for (const auto& y : tube_enumerate(t, theta, c, depth)) by_depth[y.depth()] += g(y);
  for (std::size_t k = 1; k <= depth; ++k) by_depth[k] += by_depth[k - 1];
  return by_depth;
}

bool nondecreasing(const std::vector<double>& v) {
  return std::is_sorted(v.begin(), v.end());
}

}  // namespace

std::vector<double> radial_energy(const TreeModel& t, const VertexFunction& u, const BoundaryRay& theta,
                                  std::size_t depth) {
  std::vector<double> sums(depth + 1);
  double acc = 0.0;
  for (std::size_t k = 0; k <= depth; ++k) {
    acc += laplacian_of_square(t, u, theta.vertex(k));
    sums[k] = acc;
  }
  return sums;
}

std::vector<double> nt_energy(const TreeModel& t, const VertexFunction& u, const BoundaryRay& theta, std::size_t c,
                              std::size_t depth) {
  return tube_partial_sums(t, theta, c, depth, [&](const VertexId& y) { return laplacian_of_square(t, u, y); });
}

std::vector<double> stochastic_energy(const TreeModel& t, const VertexFunction& u, const WalkPath& path) {
  std::vector<double> sums(path.vertices.size(), 0.0);
  for (std::size_t k = 1; k < path.vertices.size(); ++k) {
    sums[k] = sums[k - 1] + laplacian_of_square(t, u, path.vertices[k - 1]);
  }
  return sums;
}

std::vector<double> martingale_track(const TreeModel& t, const VertexFunction& u, const WalkPath& path) {
  auto m = stochastic_energy(t, u, path);
  for (std::size_t k = 0; k < m.size(); ++k) {
    const double v = u(path.vertices[k]);
    m[k] = v * v - m[k];
  }
  return m;
}

std::vector<double> nt_sup_profile(const TreeModel& t, const VertexFunction& u, const BoundaryRay& theta,
                                   std::size_t c, std::size_t depth) {
  std::vector<double> sup(depth + 1, 0.0);
  for (const auto& y : tube_enumerate(t, theta, c, depth)) sup[y.depth()] = std::max(sup[y.depth()], std::abs(u(y)));
  for (std::size_t k = 1; k <= depth; ++k) sup[k] = std::max(sup[k], sup[k - 1]);
  return sup;
}

double nt_sup(const TreeModel& t, const VertexFunction& u, const BoundaryRay& theta, std::size_t c,
              std::size_t depth) {
  return nt_sup_profile(t, u, theta, c, depth).back();
}

EnergyReport energy_report(const TreeModel& t, const VertexFunction& u, const BoundaryRay& theta, std::size_t c,
                           std::size_t depth, const WalkPath* path) {
  EnergyReport r;
  r.c = c;
  r.depth = depth;
  r.radial = radial_energy(t, u, theta, depth);
  r.nt = nt_energy(t, u, theta, c, depth);
  r.sup = nt_sup_profile(t, u, theta, c, depth);
  if (path) {
    r.horizon = path->steps();
    r.stochastic = stochastic_energy(t, u, *path);
    r.martingale = martingale_track(t, u, *path);
  }
  r.radial_monotone = nondecreasing(r.radial);
  r.nt_monotone = nondecreasing(r.nt);
  r.stochastic_monotone = nondecreasing(r.stochastic);
  return r;
}

std::string energy_report_csv(const EnergyReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "depth_or_step,radial_sum,nt_sum_c,sup_c,martingale_value\n";
  const std::size_t rows = std::max(report.radial.size(), report.martingale.size());
  auto cell = [&](const std::vector<double>& v, std::size_t k) {
    if (k < v.size()) out << v[k];
  };
  for (std::size_t k = 0; k < rows; ++k) {
    out << k << ',';
    cell(report.radial, k);
    out << ',';
    cell(report.nt, k);
    out << ',';
    cell(report.sup, k);
    out << ',';
    cell(report.martingale, k);
    out << '\n';
  }
  return out.str();
}

}  // namespace treepot
