#include "treepot/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "treepot/diagnostics.hpp"
#include "treepot/errors.hpp"
#include "treepot/harmonic.hpp"
#include "treepot/linear.hpp"
#include "treepot/martin.hpp"
#include "treepot/montecarlo.hpp"
#include "treepot/walk.hpp"

namespace treepot {

namespace {

using ojson = nlohmann::ordered_json;

// Fork tags keep each experiment's random streams independent of which other
// experiments are selected.
enum : std::uint64_t {
  kTagTriples = 1,
  kTagGreenSamples,
  kTagHitting,
  kTagOccupation,
  kTagRatio,
  kTagMartingale,
  kTagRays,
  kTagRayWalks,
  kTagTheta0Walk,
  kTagDirichletData,
  kTagSimulate,
};

Check verdict(std::string name, std::string anchor, bool ok, double margin) {
  Check c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.status = ok ? Status::pass : Status::fail;
  c.margin = margin;
  return c;
}

// Shared state of one suite run.
class Context {
 public:
  explicit Context(const ExperimentConfig& config)
      : config_(config), tree_(std::make_shared<const TreeModel>(config.tree)), ray_(config.ray) {}

  const ExperimentConfig& config() const { return config_; }
  const TreeModel& tree() const { return *tree_; }
  const std::shared_ptr<const TreeModel>& tree_ptr() const { return tree_; }
  const BoundaryRay& ray() const { return ray_; }
  RngPlan plan(std::uint64_t tag) const { return RngPlan{config_.simulation.seed}.fork(tag); }

  SolverOptions options() const {
    SolverOptions o;
    o.tol = config_.solver.tol;
    o.execution = config_.execution;
    return o;
  }

  std::shared_ptr<const PotentialTable> solve(std::size_t depth) const {
    return std::make_shared<const PotentialTable>(solve_potential(tree_, depth, options()));
  }

  /// Table with accurate brackets near the root; solved once per suite.
  const std::shared_ptr<const PotentialTable>& deep() {
    if (!deep_) deep_ = solve(config_.solver.deep_depth);
    return deep_;
  }

  /// Depth up to which the deep table is certified at width_tol.
  std::size_t certified_depth() { return deep()->certified_depth(config_.solver.width_tol); }

  /// The edge value 1/(d-1) of the homogeneous uniform tree, if this is one.
  std::optional<double> uniform_edge() const {
    if (!tree_->radially_symmetric()) return std::nullopt;
    return 1.0 / static_cast<double>(config_.tree.degree - 1);
  }

  void require_certified(const VertexId& v, const char* what) {
    if (v.depth() > certified_depth()) {
      throw RangeError(std::string(what) + " at depth " + std::to_string(v.depth()) +
                       " is past the certified depth " + std::to_string(certified_depth()));
    }
  }

 private:
  const ExperimentConfig& config_;
  std::shared_ptr<const TreeModel> tree_;
  BoundaryRay ray_;
  std::shared_ptr<const PotentialTable> deep_;
};

SuiteOutput start_output(const std::string& suite, const ExperimentConfig& config) {
  SuiteOutput out{SuiteReport(suite), {}};
  auto& meta = out.report.metadata();
  meta["config"] = to_json(config);
  // The output directory does not affect results; leaving it out keeps reports
  // comparable across directories.
  meta["config"].erase("output");
  meta["ray_extension"] = "child index 0 beyond the recorded prefix";
  meta["statistical_gates"] = "3 standard errors; fixed fractions (0.95, 0.99, 0.999) are artifact policy";
  return out;
}

// Runs one named experiment if selected. Exceptions become a failed check.
template <class Fn>
void experiment(const ExperimentConfig& config, SuiteOutput& out, const std::string& name, Fn&& fn) {
  if (!config.selected(name)) return;
  try {
    fn();
  } catch (const std::exception& e) {
    Check c;
    c.name = name;
    c.anchor = "plumbing";
    c.status = Status::fail;
    c.margin = -std::numeric_limits<double>::infinity();
    c.note = std::string("experiment aborted: ") + e.what();
    out.report.add(std::move(c));
  }
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string line;
  for (const auto& c : cells) {
    if (!line.empty()) line += ',';
    line += c;
  }
  return line + '\n';
}

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::size_t v) { return std::to_string(v); }

VertexId uniform_pick(const std::vector<VertexId>& set, RngStream& rng) {
  return set[rng.bits() % set.size()];
}

/// First child of v that does not continue the ray.
VertexId off_ray_child(const TreeModel& t, const BoundaryRay& ray, const VertexId& v) {
  const bool on_ray = ray.meet_depth(v) == v.depth();
  const std::uint32_t skip = on_ray ? ray.index(v.depth()) : kMaxDegree;
  for (std::uint32_t c = 0; c < t.children(v); ++c) {
    if (c != skip) return v.child(c);
  }
  throw AddressError("no off-ray child at " + v.to_string());
}

// ---------------------------------------------------------------- identities

void geodesic_triples(Context& ctx, SuiteOutput& out) {
  const auto& cfg = ctx.config();
  const auto table = ctx.solve(cfg.solver.depth);
  const auto ball = ball_enumerate(ctx.tree(), cfg.solver.depth);
  RngStream rng = ctx.plan(kTagTriples).stream(0);
  const auto edge = ctx.uniform_edge();

  double worst_h = 0.0, worst_g = 0.0, worst_analytic = 0.0;
  std::ostringstream csv;
  csv << "x,z,y,distance,H_low,H_high,H_residual,G_residual\n";
  for (std::size_t i = 0; i < cfg.identities.triples; ++i) {
    const VertexId x = uniform_pick(ball, rng);
    const VertexId y = uniform_pick(ball, rng);
    const auto path = geodesic(ctx.tree(), x, y);
    const VertexId z = uniform_pick(path, rng);
    const Bracket h = hitting(*table, x, y);
    const Bracket hz = hitting(*table, x, z) * hitting(*table, z, y);
    const Bracket g = green(*table, x, y);
    const Bracket gz = hitting(*table, x, z) * green(*table, z, y);
    const double rh = std::max(std::abs(h.low - hz.low), std::abs(h.high - hz.high));
    const double rg = std::max(std::abs(g.low - gz.low), std::abs(g.high - gz.high));
    worst_h = std::max(worst_h, rh);
    worst_g = std::max(worst_g, rg);
    if (edge) {
      const double exact = std::pow(*edge, static_cast<double>(path.size() - 1));
      const double outside = std::max({0.0, h.low - exact, exact - h.high});
      worst_analytic = std::max(worst_analytic, outside);
    }
    csv << csv_row({x.to_string(), z.to_string(), y.to_string(), fmt(path.size() - 1), fmt(h.low), fmt(h.high),
                    fmt(rh), fmt(rg)});
  }
  const double tol = 1e-9;
  auto ch = verdict("hitting-multiplicativity", "H(x,y)=H(x,z)H(z,y)", worst_h <= tol, tol - worst_h);
  ch.values = {{"max_residual", worst_h}, {"triples", cfg.identities.triples}, {"depth", cfg.solver.depth}};
  ch.target = tol;
  out.report.add(std::move(ch));

  auto cg = verdict("green-multiplicativity", "G(x,y)=H(x,z)G(z,y)", worst_g <= tol, tol - worst_g);
  cg.values = {{"max_residual", worst_g}, {"triples", cfg.identities.triples}};
  cg.target = tol;
  out.report.add(std::move(cg));

  Check ca;
  ca.name = "hitting-analytic";
  ca.anchor = "H(x,y)=H(x,z)H(z,y)";
  if (edge) {
    ca = verdict(ca.name, ca.anchor, worst_analytic <= 1e-15, 1e-15 - worst_analytic);
    ca.values = {{"edge_value", *edge}, {"max_distance_outside_bracket", worst_analytic}};
    ca.target = "F^d(x,y) inside the H bracket";
  } else {
    ca.note = "no closed form for this tree";
  }
  out.report.add(std::move(ca));

  out.files["geodesic_triples.csv"] = csv.str();
  out.files["potential.csv"] = potential_csv(*table, cfg.solver.depth);
}

// Number of leading decimal digits on which both ends of b agree.
int agreeing_digits(const Bracket& b) {
  int digits = 0;
  for (int k = 1; k <= 16; ++k) {
    const double scale = std::pow(10.0, k);
    if (std::floor(b.low * scale) != std::floor(b.high * scale)) break;
    digits = k;
  }
  return digits;
}

void certification(Context& ctx, SuiteOutput& out) {
  const auto& cfg = ctx.config().identities;
  const auto base = ctx.solve(cfg.certification_depth);
  const auto finer = ctx.solve(cfg.recheck_depth);

  const std::size_t interior = cfg.certification_depth - cfg.certified_distance;
  double worst = 0.0;
  for (std::size_t k = 1; k <= interior; ++k) worst = std::max(worst, base->width_at_depth(k));
  auto cw = verdict("bracket-width-interior", "plumbing", worst <= cfg.certified_width, cfg.certified_width - worst);
  cw.values = {{"depth", cfg.certification_depth},
               {"distance_from_sphere", cfg.certified_distance},
               {"max_width", worst},
               {"sweeps", base->stats().sweeps},
               {"rho", ctx.tree().rho()}};
  cw.target = cfg.certified_width;
  out.report.add(std::move(cw));

  bool nested = true;
  int min_digits = 17;
  bool digits_kept = true;
  ojson edges = ojson::array();
  const VertexId o = VertexId::root();
  for (std::uint32_t c = 0; c < ctx.tree().children(o); ++c) {
    const Bracket a = base->edge(o, o.child(c));
    const Bracket b = finer->edge(o, o.child(c));
    const bool in = b.low >= a.low - 1e-15 && b.high <= a.high + 1e-15;
    nested = nested && in;
    const int digits = agreeing_digits(a);
    min_digits = std::min(min_digits, digits);
    const double scale = std::pow(10.0, digits);
    digits_kept = digits_kept && std::floor(b.low * scale) == std::floor(a.low * scale) &&
                  std::floor(b.high * scale) == std::floor(a.low * scale);
    edges.push_back({{"to", o.child(c).to_string()}, {"base", to_json(a)}, {"recheck", to_json(b)}});
  }
  auto cn = verdict("certified-digits-stable", "plumbing", nested && digits_kept, nested && digits_kept ? 0.0 : -1.0);
  cn.values = {{"edges", edges}, {"certified_digits", min_digits}, {"nested", nested}, {"digits_kept", digits_kept}};
  cn.target = "recheck bracket nested in the base bracket";
  out.report.add(std::move(cn));

  std::ostringstream csv;
  csv << "depth,width_base,width_recheck\n";
  for (std::size_t k = 1; k <= cfg.certification_depth; ++k) {
    csv << csv_row({fmt(k), fmt(base->width_at_depth(k)), fmt(finer->width_at_depth(k))});
  }
  out.files["certification.csv"] = csv.str();
}

void green_diagonal_check(Context& ctx, SuiteOutput& out) {
  const auto& cfg = ctx.config();
  const auto& deep = *ctx.deep();
  const auto ball = ball_enumerate(ctx.tree(), cfg.identities.sample_radius);
  RngStream rng = ctx.plan(kTagGreenSamples).stream(0);
  const double eps = cfg.tree.epsilon;
  const double bound = 3.0 * eps * eps;
  const auto edge = ctx.uniform_edge();

  double min_low = std::numeric_limits<double>::infinity();
  double worst_dev = 0.0;
  std::ostringstream csv;
  csv << "vertex,G_low,G_high\n";
  for (std::size_t i = 0; i < cfg.identities.green_samples; ++i) {
    const VertexId y = uniform_pick(ball, rng);
    ctx.require_certified(y, "sampled vertex");
    const Bracket g = green_diagonal(deep, y);
    min_low = std::min(min_low, g.low);
    if (edge) {
      // U = sum over neighbors p * F = d * (1/d) * 1/(d-1), so G = (d-1)/(d-2).
      const double d = static_cast<double>(cfg.tree.degree);
      const double analytic = (d - 1.0) / (d - 2.0);
      worst_dev = std::max({worst_dev, std::abs(g.low - analytic), std::abs(g.high - analytic)});
    }
    csv << csv_row({y.to_string(), fmt(g.low), fmt(g.high)});
  }
  auto cb = verdict("green-diagonal-bound", "G(y,y)>=p_2(y,y)>=3eps^2", min_low >= bound, min_low - bound);
  cb.values = {{"min_G_low", min_low}, {"samples", cfg.identities.green_samples}};
  cb.target = bound;
  out.report.add(std::move(cb));

  Check cv;
  cv.name = "green-diagonal-value";
  cv.anchor = "G(x,y)= sum p_n(x,y)";
  if (edge) {
    const double tol = 1e-8;
    cv = verdict(cv.name, cv.anchor, worst_dev <= tol, tol - worst_dev);
    const double d = static_cast<double>(cfg.tree.degree);
    cv.values = {{"analytic", (d - 1.0) / (d - 2.0)}, {"max_deviation", worst_dev}};
    cv.target = tol;
  } else {
    cv.note = "no closed form for this tree";
  }
  out.report.add(std::move(cv));
  out.files["green_diagonal.csv"] = csv.str();
}

void h_transform(Context& ctx, SuiteOutput& out) {
  const auto& cfg = ctx.config();
  const MartinKernel kernel(ctx.deep(), ctx.ray());
  const auto ball = ball_enumerate(ctx.tree(), cfg.identities.sample_radius);
  double worst_defect = 0.0;
  double worst_excess = 0.0;  // defect beyond its bracket-induced bound
  for (const auto& x : ball) {
    ctx.require_certified(x, "ball vertex");
    const auto law = conditioned_kernel(kernel, x);
    worst_defect = std::max(worst_defect, std::abs(law.defect));
    worst_excess = std::max(worst_excess, std::abs(law.defect) - law.defect_bound);
  }
  const double tol = 1e-8;
  auto cs = verdict("h-transform-stochastic", "p^θ(x,y)=K_θ(y)/K_θ(x)p(x,y)", worst_defect <= tol && worst_excess <= 1e-15,
                    tol - worst_defect);
  cs.values = {{"max_defect", worst_defect}, {"max_defect_beyond_bound", worst_excess}, {"vertices", ball.size()}};
  cs.target = tol;
  out.report.add(std::move(cs));

  const VertexId o = VertexId::root();
  const auto law = conditioned_kernel(kernel, o);
  std::ostringstream csv;
  csv << "vertex,p,p_theta\n";
  ojson probs = ojson::array();
  for (std::size_t s = 0; s < law.neighbors.size(); ++s) {
    csv << csv_row({law.neighbors[s].to_string(), fmt(ctx.tree().p(o, law.neighbors[s])), fmt(law.probs[s])});
    probs.push_back(law.probs[s]);
  }
  out.files["conditioned_root.csv"] = csv.str();

  Check cr;
  cr.name = "h-transform-root-law";
  cr.anchor = "p^θ(x,y)=K_θ(y)/K_θ(x)p(x,y)";
  if (ctx.uniform_edge()) {
    const double d = static_cast<double>(cfg.tree.degree);
    double worst = 0.0;
    for (std::size_t s = 0; s < law.neighbors.size(); ++s) {
      const bool toward = law.neighbors[s].last() == ctx.ray().index(0);
      const double oracle = toward ? (d - 1.0) / d : 1.0 / (d * (d - 1.0));
      worst = std::max(worst, std::abs(law.probs[s] - oracle));
    }
    cr = verdict(cr.name, cr.anchor, worst <= tol, tol - worst);
    cr.values = {{"law", probs}, {"max_deviation", worst}};
    cr.target = ojson::array({(d - 1.0) / d, 1.0 / (d * (d - 1.0))});
  } else {
    cr.values = {{"law", probs}};
    cr.note = "no closed form for this tree";
  }
  out.report.add(std::move(cr));

  // Drift toward theta along the ray.
  double min_gain = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < cfg.identities.sample_radius; ++k) {
    const VertexId x = ctx.ray().vertex(k);
    const VertexId next = ctx.ray().vertex(k + 1);
    const auto lx = conditioned_kernel(kernel, x);
    for (std::size_t s = 0; s < lx.neighbors.size(); ++s) {
      if (lx.neighbors[s] == next) min_gain = std::min(min_gain, lx.probs[s] - ctx.tree().p(x, next));
    }
  }
  auto cd = verdict("h-transform-drift", "p^θ(x,y)=K_θ(y)/K_θ(x)p(x,y)", min_gain > 0.0, min_gain);
  cd.values = {{"min_gain_toward_theta", min_gain}};
  cd.target = "> 0";
  out.report.add(std::move(cd));
}

void martin_normalization(Context& ctx, SuiteOutput& out) {
  const auto& cfg = ctx.config();
  const MartinKernel kernel(ctx.deep(), ctx.ray());
  const Bracket k0 = kernel.value(VertexId::root());
  auto c0 = verdict("martin-root", "K_θ(o)=1", k0 == Bracket::exact(1.0), k0 == Bracket::exact(1.0) ? 0.0 : -std::abs(k0.mid() - 1.0));
  c0.values = {{"K_o", to_json(k0)}};
  c0.target = 1.0;
  out.report.add(std::move(c0));

  const auto ball = ball_enumerate(ctx.tree(), cfg.identities.sample_radius);
  Check ck;
  ck.name = "martin-closed-form";
  ck.anchor = "K_θ(x)=H(x,π)/H(o,π)";
  if (ctx.uniform_edge()) {
    const double base = static_cast<double>(cfg.tree.degree - 1);
    double worst = 0.0;
    for (const auto& y : ball) {
      const std::size_t m = ctx.ray().meet_depth(y);
      const double exact = std::pow(base, static_cast<double>(m) - static_cast<double>(y.depth() - m));
      worst = std::max(worst, std::abs(kernel(y) / exact - 1.0));
    }
    const double tol = 1e-8;
    ck = verdict(ck.name, ck.anchor, worst <= tol, tol - worst);
    ck.values = {{"max_relative_error", worst}, {"vertices", ball.size()}};
    ck.target = tol;
  } else {
    ck.note = "no closed form for this tree";
  }
  out.report.add(std::move(ck));
  out.files["martin.csv"] = martin_csv(kernel, ball_enumerate(ctx.tree(), std::min<std::size_t>(4, cfg.identities.sample_radius)));
}

void restriction_monotonicity(Context& ctx, SuiteOutput& out) {
  const std::size_t r = ctx.config().identities.restriction_radius;
  const VertexId o = VertexId::root();
  const RestrictedGreen inner(ctx.tree(), ball_enumerate(ctx.tree(), r - 1));
  const RestrictedGreen outer(ctx.tree(), ball_enumerate(ctx.tree(), r));
  const auto& deep = *ctx.deep();
  const auto row_inner = inner.row(o);
  const auto row_outer = outer.row(o);
  double worst = -std::numeric_limits<double>::infinity();
  std::ostringstream csv;
  csv << "vertex,G_inner,G_outer,G_high\n";
  for (std::size_t i = 0; i < inner.vertices().size(); ++i) {
    const VertexId& y = inner.vertices()[i];
    const double a = row_inner[i];
    const double b = row_outer[*outer.find(y)];
    const double g = green(deep, o, y).high;
    worst = std::max({worst, a - b, b - g});
    csv << csv_row({y.to_string(), fmt(a), fmt(b), fmt(g)});
  }
  const double slack = 1e-12;
  auto c = verdict("restriction-monotonicity", "Green function of U", worst <= slack, slack - worst);
  c.values = {{"inner_radius", r - 1}, {"outer_radius", r}, {"max_violation", worst}};
  c.target = "G_U <= G_U' <= G";
  out.report.add(std::move(c));
  out.files["restriction.csv"] = csv.str();
}

// -------------------------------------------------------------------- lemmas

struct HitSample {
  double hit_off_ray = 0.0;
  double hit_ray = 0.0;
  std::uint8_t truncated = 0;
};

void conditioned_hitting(Context& ctx, SuiteOutput& out) {
  const auto& cfg = ctx.config();
  const MartinKernel kernel(ctx.deep(), ctx.ray());
  const VertexId pi = ctx.ray().vertex(cfg.lemmas.hitting_projection);
  const VertexId x = off_ray_child(ctx.tree(), ctx.ray(), pi);
  const VertexId target = ctx.ray().vertex(cfg.lemmas.hitting_ray_depth);
  const Bracket exact = hitting(kernel.table(), x, pi) * hitting(kernel.table(), pi, x);
  const std::size_t limit = ctx.certified_depth();
  const RngPlan plan = ctx.plan(kTagHitting);

  const auto samples = map_streams(plan, cfg.simulation.n_paths, cfg.execution, [&](RngStream& rng, std::size_t) {
    HitSample s;
    VertexId v = VertexId::root();
    const auto reason = run_conditioned(kernel, v, cfg.simulation.horizon, rng, limit, [&](std::size_t, const VertexId& y) {
      if (y == x) s.hit_off_ray = 1.0;
      if (y == target) s.hit_ray = 1.0;
      return Control::proceed;
    });
    s.truncated = reason == Termination::truncated;
    return s;
  });
  std::vector<double> off(samples.size()), on(samples.size());
  std::size_t truncated = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    off[i] = samples[i].hit_off_ray;
    on[i] = samples[i].hit_ray;
    truncated += samples[i].truncated;
  }
  const Estimate e_off = estimate_mean(off, plan.seed);
  const Estimate e_on = estimate_mean(on, plan.seed);

  const double slack = 0.5 * exact.width();
  const double gap = std::abs(e_off.estimate - exact.mid());
  auto cp = verdict("conditioned-hitting-product", "H^θ(o,x_n)=H(x_n,y_n)H(y_n,x_n)",
                    within_sigmas(e_off, exact.mid(), 3.0, slack), slack + 3.0 * e_off.std_error - gap);
  cp.values = {{"vertex", x.to_string()},
               {"exact", to_json(exact)},
               {"monte_carlo", to_json(e_off)},
               {"horizon", cfg.simulation.horizon},
               {"truncated_paths", truncated}};
  cp.target = exact.mid();
  out.report.add(std::move(cp));

  const double gate = 0.999;
  auto cr = verdict("conditioned-hitting-ray", "hits P_o^θ-a.s. infinitely many x_n", e_on.estimate >= gate,
                    e_on.estimate - gate);
  cr.values = {{"vertex", target.to_string()}, {"monte_carlo", to_json(e_on)}, {"truncated_paths", truncated}};
  cr.target = gate;
  out.report.add(std::move(cr));
}

std::vector<VertexId> occupation_targets(Context& ctx) {
  const auto& names = ctx.config().lemmas.occupation_vertices;
  std::vector<VertexId> ys;
  if (!names.empty()) {
    for (const auto& n : names) ys.push_back(VertexId::parse(n));
    return ys;
  }
  const auto& ray = ctx.ray();
  const std::size_t r = ctx.config().lemmas.occupation_radius;
  for (std::size_t k = 0; k <= r; ++k) ys.push_back(ray.vertex(k));
  for (std::size_t k = 0; k < r; ++k) ys.push_back(off_ray_child(ctx.tree(), ray, ray.vertex(k)));
  for (std::size_t k = 0; k + 2 <= r && ys.size() < 10; ++k) {
    ys.push_back(off_ray_child(ctx.tree(), ray, ray.vertex(k)).child(0));
  }
  ys.resize(std::min<std::size_t>(ys.size(), 10));
  return ys;
}

void occupation(Context& ctx, SuiteOutput& out) {
  const auto& cfg = ctx.config();
  const std::size_t radius = cfg.lemmas.occupation_radius;
  const MartinKernel kernel(ctx.deep(), ctx.ray());
  const auto ys = occupation_targets(ctx);
  const RestrictedGreen green_ball(ctx.tree(), ball_enumerate(ctx.tree(), radius));
  const auto row = green_ball.row(VertexId::root());
  std::vector<double> exact;
  for (const auto& y : ys) {
    auto i = green_ball.find(y);
    if (!i) throw RangeError(y.to_string() + " is outside the occupation ball");
    exact.push_back(row[*i] * kernel(y));
  }
  const std::size_t limit = ctx.certified_depth();
  const RngPlan plan = ctx.plan(kTagOccupation);
  struct Visits {
    std::vector<double> counts;
    std::uint8_t exited = 0;
  };
  const auto samples = map_streams(plan, cfg.simulation.n_paths, cfg.execution, [&](RngStream& rng, std::size_t) {
    Visits s;
    s.counts.assign(ys.size(), 0.0);
    VertexId v = VertexId::root();
    const auto reason = run_conditioned(kernel, v, cfg.simulation.horizon, rng, limit, [&](std::size_t, const VertexId& x) {
      if (x.depth() > radius) return Control::exit;
      for (std::size_t j = 0; j < ys.size(); ++j) {
        if (x == ys[j]) s.counts[j] += 1.0;
      }
      return Control::proceed;
    });
    s.exited = reason == Termination::exited_set;
    return s;
  });
  std::size_t unexited = 0;
  for (const auto& s : samples) unexited += s.exited ? 0 : 1;

  bool all = true;
  double margin = std::numeric_limits<double>::infinity();
  ojson per = ojson::array();
  std::vector<double> column(samples.size());
  std::ostringstream csv;
  csv << "vertex,exact,estimate,stderr\n";
  for (std::size_t j = 0; j < ys.size(); ++j) {
    for (std::size_t i = 0; i < samples.size(); ++i) column[i] = samples[i].counts[j];
    const Estimate e = estimate_mean(column, plan.seed);
    const bool ok = within_sigmas(e, exact[j]);
    all = all && ok;
    margin = std::min(margin, 3.0 * e.std_error - std::abs(e.estimate - exact[j]));
    per.push_back({{"vertex", ys[j].to_string()}, {"exact", exact[j]}, {"monte_carlo", to_json(e)}, {"pass", ok}});
    csv << csv_row({ys[j].to_string(), fmt(exact[j]), fmt(e.estimate), fmt(e.std_error)});
  }
  auto c = verdict("occupation-identity", "φ(y) G_Γ(o,y)K_θ(y)", all && unexited == 0, margin);
  c.values = {{"radius", radius}, {"vertices", per}, {"paths_not_exited", unexited}};
  c.target = "each estimate within 3 stderr of G_Γ(o,y)K_θ(y)";
  out.report.add(std::move(c));
  out.files["occupation.csv"] = csv.str();
}

void tube_lower_bound(Context& ctx, SuiteOutput& out) {
  const auto& cfg = ctx.config();
  const MartinKernel kernel(ctx.deep(), ctx.ray());
  bool identity = true;
  bool bound = true;
  double identity_margin = std::numeric_limits<double>::infinity();
  double bound_margin = std::numeric_limits<double>::infinity();
  ojson per_width = ojson::array();
  std::ostringstream csv;
  csv << "c,vertex,direct_low,direct_high,via_projection_low,via_projection_high,bound\n";
  for (std::size_t c : cfg.lemmas.tube_widths) {
    double min_value = std::numeric_limits<double>::infinity();
    double alpha = 0.0;
    std::size_t n = 0;
    for (const auto& y : tube_enumerate(ctx.tree(), ctx.ray(), c, cfg.lemmas.tube_depth)) {
      ctx.require_certified(y, "tube vertex");
      const auto r = lower_bound_product(kernel, y, c);
      identity = identity && r.identity_holds;
      bound = bound && r.bound_holds;
      const double gap = std::abs(r.direct.mid() - r.via_projection.mid());
      const double scale = std::max(r.direct.high, r.via_projection.high);
      identity_margin =
          std::min(identity_margin, r.direct.width() + r.via_projection.width() + 1e-14 * scale - gap);
      const double low = std::min(r.direct.low, r.via_projection.low);
      min_value = std::min(min_value, low);
      bound_margin = std::min(bound_margin, low - r.bound);
      alpha = r.bound;
      ++n;
      csv << csv_row({fmt(c), y.to_string(), fmt(r.direct.low), fmt(r.direct.high), fmt(r.via_projection.low),
                      fmt(r.via_projection.high), fmt(r.bound)});
    }
    per_width.push_back({{"c", c}, {"vertices", n}, {"min_value", min_value}, {"alpha", alpha}});
  }
  auto ci = verdict("tube-lower-bound-identity", "=H(y,π(y))H(π(y),y)G(y,y)", identity, identity_margin);
  ci.values = {{"depth", cfg.lemmas.tube_depth}, {"widths", per_width}};
  ci.target = "agreement within combined bracket width";
  out.report.add(std::move(ci));

  auto cb = verdict("tube-lower-bound", "G(o,y)K_θ(y) ≥ α", bound, bound_margin);
  cb.values = {{"depth", cfg.lemmas.tube_depth}, {"widths", per_width}};
  cb.target = "3 eps^2 eps^(2c)";
  out.report.add(std::move(cb));
  out.files["tube_lower_bound.csv"] = csv.str();
}

struct TubeSample {
  double survived = 0.0;     // never left the tube within the horizon
  double reached = 0.0;      // hit gamma(n) before leaving the tube
  std::uint8_t truncated = 0;
};

void tube_green_ratio(Context& ctx, SuiteOutput& out) {
  const auto& cfg = ctx.config();
  const std::size_t c = cfg.lemmas.ratio_width;
  const std::size_t n = cfg.lemmas.ratio_depth;
  const MartinKernel kernel(ctx.deep(), ctx.ray());
  const PotentialTable tube = green_tube(ctx.tree_ptr(), ctx.ray(), c, cfg.solver.deep_depth, ctx.options());
  const VertexId o = VertexId::root();
  const VertexId y = ctx.ray().vertex(n);
  ctx.require_certified(y, "ratio vertex");
  const Bracket g_tube = green(tube, o, y);
  const Bracket g_full = green(*ctx.deep(), o, y);
  const Bracket ratio = g_tube / g_full;
  const Bracket diag_ratio = green_diagonal(tube, y) / green_diagonal(*ctx.deep(), y);

  // G_U(o, gamma(k)) <= G(o, gamma(k)) along the ray.
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= n; ++k) {
    const VertexId v = ctx.ray().vertex(k);
    worst = std::max(worst, green(tube, o, v).low - green(*ctx.deep(), o, v).high);
  }
  auto cm = verdict("tube-restriction", "U ⊂ S containing Γ_c^θ", worst <= 1e-12, 1e-12 - worst);
  cm.values = {{"c", c}, {"max_violation", worst}};
  cm.target = "G_U(o,y) <= G(o,y)";
  out.report.add(std::move(cm));

  const std::size_t limit = ctx.certified_depth();
  const RngPlan plan = ctx.plan(kTagRatio);
  const auto samples = map_streams(plan, cfg.simulation.n_paths, cfg.execution, [&](RngStream& rng, std::size_t) {
    TubeSample s;
    bool reached = false;
    VertexId v = o;
    const auto reason = run_conditioned(kernel, v, cfg.simulation.horizon, rng, limit, [&](std::size_t, const VertexId& x) {
      if (ray_distance(ctx.ray(), x) > c) return Control::exit;
      if (x == y) reached = true;
      return Control::proceed;
    });
    s.reached = reached ? 1.0 : 0.0;
    s.survived = reason == Termination::horizon ? 1.0 : 0.0;
    s.truncated = reason == Termination::truncated;
    return s;
  });
  std::vector<double> survived(samples.size()), reached(samples.size());
  std::size_t truncated = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    survived[i] = samples[i].survived;
    reached[i] = samples[i].reached;
    truncated += samples[i].truncated;
  }
  const Estimate e_surv = estimate_mean(survived, plan.seed);
  const Estimate e_reach = estimate_mean(reached, plan.seed);

  const double slack = 0.02 + 0.5 * ratio.width();
  const double gap = std::abs(e_surv.estimate - ratio.mid());
  auto cr = verdict("tube-green-ratio", "P_o^θ[τ=+∞]", within_sigmas(e_surv, ratio.mid(), 3.0, slack),
                    slack + 3.0 * e_surv.std_error - gap);
  cr.values = {{"c", c},
               {"n", n},
               {"ratio", to_json(ratio)},
               {"survival", to_json(e_surv)},
               {"horizon", cfg.simulation.horizon},
               {"truncated_paths", truncated}};
  cr.target = ratio.mid();
  cr.note = "survival is the fraction of conditioned paths still inside the tube at the horizon";
  out.report.add(std::move(cr));

  // Finite-n form: G_U(o,y)/G(o,y) = P^θ[T_y < τ] G_U(y,y)/G(y,y).
  const Bracket predicted = ratio / diag_ratio;
  const double slack_f = 0.5 * predicted.width();
  const double gap_f = std::abs(e_reach.estimate - predicted.mid());
  auto cf = verdict("tube-green-ratio-finite", "P_o^θ[τ=+∞]", within_sigmas(e_reach, predicted.mid(), 3.0, slack_f),
                    slack_f + 3.0 * e_reach.std_error - gap_f);
  cf.values = {{"c", c}, {"n", n}, {"predicted_hit_before_exit", to_json(predicted)}, {"monte_carlo", to_json(e_reach)}};
  cf.target = predicted.mid();
  cf.note = "G_U(o,y)/G(o,y) = P[T_y < τ] G_U(y,y)/G(y,y) under the conditioned law";
  out.report.add(std::move(cf));
}

void martingale(Context& ctx, SuiteOutput& out) {
  const auto& cfg = ctx.config();
  const std::size_t radius = cfg.lemmas.martingale_radius;
  const std::size_t steps = cfg.lemmas.martingale_steps;
  const MartinKernel k0(ctx.deep(), ctx.ray());
  const VertexId o = VertexId::root();
  const VertexId other = off_ray_child(ctx.tree(), ctx.ray(), o);
  const MartinKernel k1(ctx.deep(), BoundaryRay({other.last()}));
  const std::array<HarmonicFunction, 2> us{
      HarmonicFunction::martin({{1.0, k0}}, 0.0, cfg.solver.width_tol),
      HarmonicFunction::martin({{0.5, k0}, {0.5, k1}}, 0.0, cfg.solver.width_tol)};
  const std::array<std::string, 2> names{"martin", "mixture"};
  for (const auto& u : us) {
    if (radius + 1 > u.domain_depth()) throw RangeError("martingale ball exceeds the certified depth");
  }
  const RngPlan plan = ctx.plan(kTagMartingale);
  const auto values = map_streams(plan, cfg.simulation.n_paths, cfg.execution, [&](RngStream& rng, std::size_t) {
    std::array<double, 2> energy{0.0, 0.0};
    VertexId v = o;
    run_plain(ctx.tree(), v, steps, rng, [&](std::size_t, const VertexId& x) {
      if (x.depth() > radius) return Control::exit;
      for (std::size_t j = 0; j < us.size(); ++j) energy[j] += laplacian_of_square(ctx.tree(), std::cref(us[j]), x);
      return Control::proceed;
    });
    std::array<double, 2> m{};
    for (std::size_t j = 0; j < us.size(); ++j) {
      const double end = us[j](v);
      m[j] = end * end - energy[j];
    }
    return m;
  });
  bool all = true;
  double margin = std::numeric_limits<double>::infinity();
  ojson per = ojson::array();
  std::vector<double> column(values.size());
  for (std::size_t j = 0; j < us.size(); ++j) {
    for (std::size_t i = 0; i < values.size(); ++i) column[i] = values[i][j];
    const Estimate e = estimate_mean(column, plan.seed);
    const double target = us[j](o) * us[j](o);
    const bool ok = within_sigmas(e, target);
    all = all && ok;
    margin = std::min(margin, 3.0 * e.std_error - std::abs(e.estimate - target));
    per.push_back({{"function", names[j]}, {"u2_o", target}, {"monte_carlo", to_json(e)}, {"pass", ok}});
  }
  auto c = verdict("martingale-optional-stopping", "E_o[M_{τ∧n}] = E_o[M_0] = u²(o)", all, margin);
  c.values = {{"radius", radius}, {"steps", steps}, {"functions", per}};
  c.target = "u²(o) within 3 stderr";
  out.report.add(std::move(c));
}

// --------------------------------------------------------------------- fatou

struct FunctionCase {
  std::string name;
  HarmonicFunction u;
  std::size_t scale;
};

// Rough +-1 boundary data, a fixed function of the vertex and the seed.
double rough_sign(std::uint64_t seed, const VertexId& y) {
  return (mix_key(seed, VertexIdHash{}(y)) & 1u) ? 1.0 : -1.0;
}

struct RayOutcome {
  std::vector<RayFlags> flags;  // per function
  std::vector<std::array<ScaleSummary, 3>> summaries;
  std::string prefix;
};

RayOutcome classify_ray(Context& ctx, const std::vector<FunctionCase>& cases, const BoundaryRay& theta,
                        RngStream& rng, std::size_t max_scale) {
  const auto& cfg = ctx.config();
  const MartinKernel kernel(ctx.deep(), theta);
  WalkPath path;
  path.start = VertexId::root();
  VertexId v = path.start;
  path.reason = run_conditioned(kernel, v, cfg.fatou.walk_horizon, rng, ctx.certified_depth(),
                                [&](std::size_t, const VertexId& x) {
                                  path.vertices.push_back(x);
                                  return x.depth() >= 2 * max_scale ? Control::absorb : Control::proceed;
                                });
  RayOutcome r;
  for (const auto& fc : cases) {
    std::array<ScaleSummary, 3> s{tube_summary(ctx.tree(), fc.u, theta, 0, fc.scale),
                                  tube_summary(ctx.tree(), fc.u, theta, cfg.fatou.c, fc.scale),
                                  path_summary(ctx.tree(), fc.u, path, fc.scale)};
    r.flags.push_back(RayFlags{classify(s[0], cfg.thresholds), classify(s[1], cfg.thresholds),
                               classify(s[2], cfg.thresholds)});
    r.summaries.push_back(s);
  }
  std::string p;
  for (std::size_t k = 0; k < std::min<std::size_t>(theta.recorded_depth(), 2 * max_scale); ++k) {
    p += '/' + std::to_string(theta.index(k));
  }
  r.prefix = p.empty() ? "/" : p;
  return r;
}

const std::array<const char*, 9> kFlagNames{"radial_conv", "radial_bounded", "radial_energy",
                                            "nt_conv",     "nt_bounded",     "nt_energy",
                                            "stoch_conv",  "stoch_bounded",  "stoch_energy"};

void fatou(Context& ctx, SuiteOutput& out) {
  const auto& cfg = ctx.config();
  const auto& fc = cfg.fatou;
  const BoundaryRay theta0(fc.theta0);
  const BoundaryRay theta1(fc.theta1);
  const MartinKernel k0(ctx.deep(), theta0);
  const MartinKernel k1(ctx.deep(), theta1);
  const double wt = cfg.solver.width_tol;

  std::vector<FunctionCase> cases;
  std::size_t max_scale = 1;
  for (const auto& name : fc.functions) {
    if (name == "constant") {
      cases.push_back({name, HarmonicFunction::constant(1.0), fc.scale});
    } else if (name == "martin") {
      cases.push_back({name, HarmonicFunction::martin({{1.0, k0}}, 0.0, wt), fc.scale});
    } else if (name == "mixture") {
      cases.push_back({name, HarmonicFunction::martin({{0.5, k0}, {0.5, k1}}, 0.0, wt), fc.scale});
    } else if (name == "dirichlet") {
      const std::uint64_t seed = RngPlan{cfg.simulation.seed}.fork(kTagDirichletData).seed;
      auto u = HarmonicFunction::ball_dirichlet(ctx.tree_ptr(), fc.dirichlet_radius,
                                                [seed](const VertexId& y) { return rough_sign(seed, y); });
      // Tube diagnostics stay at depth <= radius - c - 1.
      const std::size_t room = fc.dirichlet_radius > fc.c + 1 ? fc.dirichlet_radius - fc.c - 1 : 0;
      cases.push_back({name, std::move(u), std::min(fc.scale, room / 2)});
    }
    max_scale = std::max(max_scale, cases.back().scale);
  }
  const std::size_t ray_depth = 2 * max_scale + fc.c + 2;

  const RngPlan rays = ctx.plan(kTagRays);
  const RngPlan walks = ctx.plan(kTagRayWalks);
  const auto outcomes = map_streams(rays, fc.n_rays, cfg.execution, [&](RngStream& rng, std::size_t i) {
    const BoundaryRay theta = sample_boundary(ctx.tree(), VertexId::root(), ray_depth, rng);
    RngStream walk_rng = walks.stream(i);
    return classify_ray(ctx, cases, theta, walk_rng, max_scale);
  });
  RngStream forced_rng = ctx.plan(kTagTheta0Walk).stream(0);
  const RayOutcome forced = classify_ray(ctx, cases, theta0, forced_rng, max_scale);

  std::ostringstream rays_csv;
  rays_csv << "function,ray,prefix";
  for (auto n : kFlagNames) rays_csv << ',' << n;
  rays_csv << ",determinate,agree";
  for (auto fam : {"radial", "nt", "stoch"}) {
    for (auto q : {"oscillation", "sup_inner", "sup_outer", "energy_inner", "energy_outer"}) {
      rays_csv << ',' << fam << '_' << q;
    }
  }
  rays_csv << '\n';
  auto emit = [&](const std::string& fname, const std::string& label, const RayOutcome& r, std::size_t j) {
    rays_csv << fname << ',' << label << ',' << r.prefix;
    for (Flag f : r.flags[j].all()) rays_csv << ',' << to_string(f);
    rays_csv << ',' << (r.flags[j].determinate() ? 1 : 0) << ',' << (r.flags[j].agree() ? 1 : 0);
    for (const auto& s : r.summaries[j]) {
      rays_csv << ',' << fmt(s.oscillation) << ',' << fmt(s.sup_inner) << ',' << fmt(s.sup_outer) << ','
               << fmt(s.energy_inner) << ',' << fmt(s.energy_outer);
    }
    rays_csv << '\n';
  };

  std::ostringstream table_csv;
  table_csv << "function,flag_a,flag_b,value_a,value_b,count\n";
  for (std::size_t j = 0; j < cases.size(); ++j) {
    const auto& name = cases[j].name;
    std::size_t determinate = 0, agree = 0;
    // counts[a][b][va][vb]
    std::vector<std::array<std::array<std::size_t, 3>, 3>> counts(81);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const auto& rf = outcomes[i].flags[j];
      emit(name, std::to_string(i), outcomes[i], j);
      if (rf.determinate()) {
        ++determinate;
        agree += rf.agree() ? 1 : 0;
      }
      const auto all = rf.all();
      for (std::size_t a = 0; a < 9; ++a) {
        for (std::size_t b = 0; b < 9; ++b) {
          ++counts[a * 9 + b][static_cast<int>(all[a])][static_cast<int>(all[b])];
        }
      }
    }
    emit(name, "theta0", forced, j);
    for (std::size_t a = 0; a < 9; ++a) {
      for (std::size_t b = a + 1; b < 9; ++b) {
        for (int va = 0; va < 3; ++va) {
          for (int vb = 0; vb < 3; ++vb) {
            table_csv << name << ',' << kFlagNames[a] << ',' << kFlagNames[b] << ','
                      << to_string(static_cast<Flag>(va)) << ',' << to_string(static_cast<Flag>(vb)) << ','
                      << counts[a * 9 + b][va][vb] << '\n';
          }
        }
      }
    }
    const double gate = 0.95;
    Check c;
    c.name = "fatou-agreement-" + name;
    c.anchor = "non-tangential convergence, non-tangential boundedness and non-tangential finiteness of the energy "
               "are μ-almost equivalent";
    if (determinate == 0) {
      c.status = Status::indeterminate;
      c.note = "no ray had every flag determinate";
    } else {
      const double frac = static_cast<double>(agree) / static_cast<double>(determinate);
      c.status = frac >= gate ? Status::pass : Status::fail;
      c.margin = frac - gate;
      c.values["agreement"] = frac;
    }
    c.values["rays"] = outcomes.size();
    c.values["determinate_rays"] = determinate;
    c.values["agreeing_rays"] = agree;
    c.values["inner_scale"] = cases[j].scale;
    c.values["c"] = fc.c;
    c.target = gate;
    out.report.add(std::move(c));

    if (name == "martin") {
      const auto& f = forced.flags[j];
      const bool unbounded =
          f.radial.bounded == Flag::negative && f.nt.bounded == Flag::negative && f.stochastic.bounded == Flag::negative;
      auto cu = verdict("fatou-theta0-unbounded", "u is bounded on Γ_c^θ", unbounded, unbounded ? 0.0 : -1.0);
      ojson flags = ojson::object();
      const auto all = f.all();
      for (std::size_t a = 0; a < 9; ++a) flags[kFlagNames[a]] = to_string(all[a]);
      cu.values = {{"flags", flags}, {"sup_outer_nt", forced.summaries[j][1].sup_outer},
                   {"sup_inner_nt", forced.summaries[j][1].sup_inner}};
      cu.target = "all boundedness flags negative along theta0";
      out.report.add(std::move(cu));
    }
  }
  out.files["fatou_rays.csv"] = rays_csv.str();
  out.files["fatou_contingency.csv"] = table_csv.str();
}

}  // namespace

SuiteOutput cmd_identities(const ExperimentConfig& config) {
  SuiteOutput out = start_output("identities", config);
  Context ctx(config);
  experiment(config, out, "geodesic-triples", [&] { geodesic_triples(ctx, out); });
  experiment(config, out, "certification", [&] { certification(ctx, out); });
  experiment(config, out, "green-diagonal", [&] { green_diagonal_check(ctx, out); });
  experiment(config, out, "h-transform", [&] { h_transform(ctx, out); });
  experiment(config, out, "martin-normalization", [&] { martin_normalization(ctx, out); });
  experiment(config, out, "restriction-monotonicity", [&] { restriction_monotonicity(ctx, out); });
  return out;
}

SuiteOutput cmd_lemmas(const ExperimentConfig& config) {
  SuiteOutput out = start_output("lemmas", config);
  Context ctx(config);
  experiment(config, out, "conditioned-hitting", [&] { conditioned_hitting(ctx, out); });
  experiment(config, out, "occupation", [&] { occupation(ctx, out); });
  experiment(config, out, "tube-lower-bound", [&] { tube_lower_bound(ctx, out); });
  experiment(config, out, "tube-green-ratio", [&] { tube_green_ratio(ctx, out); });
  experiment(config, out, "martingale", [&] { martingale(ctx, out); });
  return out;
}

SuiteOutput cmd_fatou(const ExperimentConfig& config) {
  SuiteOutput out = start_output("fatou", config);
  Context ctx(config);
  experiment(config, out, "fatou", [&] { fatou(ctx, out); });
  return out;
}

SuiteOutput cmd_simulate(const ExperimentConfig& config) {
  SuiteOutput out = start_output("simulate", config);
  experiment(config, out, "simulate", [&] {
    Context ctx(config);
    const auto& sc = config.simulate;
    const std::size_t n = config.simulation.n_paths;
    if (n > 10000) throw ConfigError("simulate writes one file per path; use at most 10000 paths");
    const VertexId start = VertexId::parse(sc.start);
    ctx.tree().check(start);
    const RngPlan plan = ctx.plan(kTagSimulate);
    std::optional<MartinKernel> kernel;
    if (sc.conditioned) kernel.emplace(ctx.deep(), ctx.ray());
    const auto paths = map_streams(plan, n, config.execution, [&](RngStream& rng, std::size_t i) {
      WalkPath p = kernel ? simulate_conditioned(*kernel, start, config.simulation.horizon, rng, config.solver.width_tol)
                          : simulate(ctx.tree(), start, config.simulation.horizon, rng);
      p.stream = i;
      return p;
    });
    std::ostringstream summary;
    summary << "path,stream_seed,steps,termination,final_vertex\n";
    std::size_t truncated = 0;
    std::vector<double> depth(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const auto& p = paths[i];
      char name[48];
      std::snprintf(name, sizeof name, "paths/path_%06zu.csv", i);
      out.files[name] = path_csv(p);
      summary << csv_row({fmt(i), std::to_string(plan.stream_seed(i)), fmt(p.steps()), std::string(to_string(p.reason)),
                          p.vertices.back().to_string()});
      truncated += p.reason == Termination::truncated;
      depth[i] = static_cast<double>(p.vertices.back().depth());
    }
    out.files["paths.csv"] = summary.str();
    Check c;
    c.name = "certified-region";
    c.anchor = "plumbing";
    c.status = truncated == 0 ? Status::pass : Status::indeterminate;
    c.values = {{"paths", n},
                {"conditioned", sc.conditioned},
                {"truncated_paths", truncated},
                {"final_depth", to_json(estimate_mean(depth, plan.seed))}};
    c.target = "no path leaves the certified region";
    if (truncated) c.note = "some paths stopped at the edge of the certified region";
    out.report.add(std::move(c));
  });
  return out;
}

SuiteOutput run_suite(std::string_view name, const ExperimentConfig& config) {
  if (name == "identities") return cmd_identities(config);
  if (name == "lemmas") return cmd_lemmas(config);
  if (name == "fatou") return cmd_fatou(config);
  if (name == "simulate") return cmd_simulate(config);
  throw ConfigError("unknown suite " + std::string(name));
}

}  // namespace treepot
