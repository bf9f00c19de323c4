#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "treepot/harmonic.hpp"

namespace treepot {

enum class Flag { positive, negative, indeterminate };
std::string_view to_string(Flag f);

struct Thresholds {
  double conv = 1e-3;     // absolute oscillation of u past the inner scale
  double bound = 0.05;    // allowed relative growth of sup |u| between scales
  double energy = 1e-4;   // allowed tail of the energy relative to its total
};

/// Two-scale summary of u over a family of vertices (a tube, or a path),
/// split at an inner scale d and an outer scale 2d.
struct ScaleSummary {
  bool determinate = false;
  double oscillation = 0.0;  // max u - min u between the scales
  double sup_inner = 0.0;
  double sup_outer = 0.0;
  double energy_inner = 0.0;
  double energy_outer = 0.0;
};

struct PropertyFlags {
  Flag converging = Flag::indeterminate;
  Flag bounded = Flag::indeterminate;
  Flag energy_finite = Flag::indeterminate;
};

PropertyFlags classify(const ScaleSummary& s, const Thresholds& th);

/// Over tube vertices: inner = depth <= d, outer = depth <= 2d. c = 0 gives
/// the radial summary. Indeterminate when Delta(u^2) is not evaluable at
/// depth 2d.
ScaleSummary tube_summary(const TreeModel& t, const HarmonicFunction& u, const BoundaryRay& theta, std::size_t c,
                          std::size_t d);

/// Along a path, split at the first passage times to depth d and 2d.
/// Indeterminate when the path never reaches depth 2d or leaves the domain of
/// u before doing so.
ScaleSummary path_summary(const TreeModel& t, const HarmonicFunction& u, const WalkPath& path, std::size_t d);

/// Radial, non-tangential and stochastic flags of one function on one ray.
struct RayFlags {
  PropertyFlags radial;
  PropertyFlags nt;
  PropertyFlags stochastic;

  std::array<Flag, 9> all() const;
  bool determinate() const;
  /// Every flag determinate and equal.
  bool agree() const;
};

}  // namespace treepot
