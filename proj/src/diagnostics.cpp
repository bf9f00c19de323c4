#include "treepot/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace treepot {

namespace {

// Floor for comparisons of quantities that vanish up to rounding.
constexpr double kNoise = 1e-12;

Flag flag_of(bool holds) { return holds ? Flag::positive : Flag::negative; }

struct Accumulator {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double spread() const { return hi >= lo ? hi - lo : 0.0; }
};

}  // namespace

std::string_view to_string(Flag f) {
  switch (f) {
    case Flag::positive: return "positive";
    case Flag::negative: return "negative";
    case Flag::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

PropertyFlags classify(const ScaleSummary& s, const Thresholds& th) {
  PropertyFlags f;
  if (!s.determinate) return f;
  f.converging = flag_of(s.oscillation <= th.conv);
  f.bounded = flag_of(s.sup_outer <= (1.0 + th.bound) * s.sup_inner + kNoise);
  const double tail = s.energy_outer - s.energy_inner;
  f.energy_finite = flag_of(tail <= th.energy * std::abs(s.energy_outer) + kNoise);
  return f;
}

ScaleSummary tube_summary(const TreeModel& t, const HarmonicFunction& u, const BoundaryRay& theta, std::size_t c,
                          std::size_t d) {
  ScaleSummary s;
  const std::size_t outer = 2 * d;
  if (d == 0 || outer + 1 > u.domain_depth()) return s;
  const VertexFunction f = std::cref(u);
  Accumulator tail;
  for (const auto& y : tube_enumerate(t, theta, c, outer)) {
    const double v = u(y);
    const double e = laplacian_of_square(t, f, y);
    s.sup_outer = std::max(s.sup_outer, std::abs(v));
    s.energy_outer += e;
    if (y.depth() <= d) {
      s.sup_inner = std::max(s.sup_inner, std::abs(v));
      s.energy_inner += e;
    } else {
      tail.add(v);
    }
  }
  s.oscillation = tail.spread();
  s.determinate = true;
  return s;
}

ScaleSummary path_summary(const TreeModel& t, const HarmonicFunction& u, const WalkPath& path, std::size_t d) {
  ScaleSummary s;
  const std::size_t outer = 2 * d;
  if (d == 0) return s;
  const VertexFunction f = std::cref(u);
  Accumulator tail;
  bool past_inner = false;
  for (const auto& x : path.vertices) {
    if (x.depth() + 1 > u.domain_depth()) return s;
    const double v = u(x);
    if (x.depth() >= outer) {
      s.sup_outer = std::max(s.sup_outer, std::abs(v));
      if (past_inner) tail.add(v);
      s.oscillation = tail.spread();
      s.determinate = true;
      return s;
    }
    const double e = laplacian_of_square(t, f, x);
    if (x.depth() >= d) past_inner = true;
    s.sup_outer = std::max(s.sup_outer, std::abs(v));
    s.energy_outer += e;
    if (past_inner) {
      tail.add(v);
    } else {
      s.sup_inner = std::max(s.sup_inner, std::abs(v));
      s.energy_inner += e;
    }
  }
  return s;
}

std::array<Flag, 9> RayFlags::all() const {
  return {radial.converging, radial.bounded, radial.energy_finite,
          nt.converging,     nt.bounded,     nt.energy_finite,
          stochastic.converging, stochastic.bounded, stochastic.energy_finite};
}

bool RayFlags::determinate() const {
  const auto flags = all();
  return std::none_of(flags.begin(), flags.end(), [](Flag f) { return f == Flag::indeterminate; });
}

bool RayFlags::agree() const {
  const auto flags = all();
  return determinate() && std::all_of(flags.begin(), flags.end(), [&](Flag f) { return f == flags[0]; });
}

}  // namespace treepot
