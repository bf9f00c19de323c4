#pragma once

#include <algorithm>

namespace treepot {

/// Certified enclosure [low, high] of a nonnegative quantity.
struct Bracket {
  double low = 0.0;
  double high = 0.0;

  static constexpr Bracket exact(double v) noexcept { return {v, v}; }

  constexpr double width() const noexcept { return high - low; }
  constexpr double mid() const noexcept { return 0.5 * (low + high); }
  constexpr bool contains(double v, double slack = 0.0) const noexcept {
    return v >= low - slack && v <= high + slack;
  }
  constexpr bool inside(const Bracket& outer) const noexcept {
    return low >= outer.low && high <= outer.high;
  }

  friend constexpr bool operator==(const Bracket&, const Bracket&) = default;
};

// Interval products and quotients for nonnegative brackets (positive divisor).
constexpr Bracket operator*(const Bracket& a, const Bracket& b) noexcept {
  return {a.low * b.low, a.high * b.high};
}
constexpr Bracket operator/(const Bracket& a, const Bracket& b) noexcept {
  return {a.low / b.high, a.high / b.low};
}
constexpr Bracket operator*(double s, const Bracket& b) noexcept { return {s * b.low, s * b.high}; }
constexpr Bracket operator+(const Bracket& a, const Bracket& b) noexcept {
  return {a.low + b.low, a.high + b.high};
}

}  // namespace treepot
