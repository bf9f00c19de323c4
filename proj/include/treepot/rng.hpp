#pragma once

#include <cstdint>
#include <random>

namespace treepot {

/// SplitMix64 finalizer; used to derive keys and stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_key(std::uint64_t key, std::uint64_t value) noexcept {
  return splitmix64(key ^ splitmix64(value + 0x632BE59BD9B4E019ull));
}

/// Maps 64 random bits to a double in [0, 1).
constexpr double unit_double(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// One independent random stream.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return unit_double(engine_()); }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Derives stream (seed, task) deterministically; equal pairs replay the same
/// draws.
struct RngPlan {
  std::uint64_t seed = 0;

  std::uint64_t stream_seed(std::uint64_t task) const noexcept { return mix_key(splitmix64(seed), task); }
  RngStream stream(std::uint64_t task) const { return RngStream(stream_seed(task)); }
  /// A plan for a sub-experiment, independent of this plan's own streams.
  RngPlan fork(std::uint64_t tag) const noexcept { return RngPlan{mix_key(seed ^ 0xA5A5A5A5A5A5A5A5ull, tag)}; }
};

}  // namespace treepot
