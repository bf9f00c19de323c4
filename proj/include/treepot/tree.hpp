#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "treepot/vertex.hpp"

namespace treepot {

inline constexpr std::uint32_t kMaxDegree = 16;

enum class TreeKind { homogeneous, seeded_random };
enum class KernelRule { uniform, seeded_random };

/// Parameters that fully determine a tree and its transition kernel.
struct TreeSpec {
  TreeKind kind = TreeKind::homogeneous;
  std::uint32_t degree = 3;
  std::uint32_t d_min = 3;
  std::uint32_t d_max = 3;
  KernelRule kernel = KernelRule::uniform;
  double epsilon = 1.0 / 3.0;
  double eta = 1.0 / 6.0;
  std::uint64_t seed = 0;

  /// Throws ConfigError unless every generated kernel row can satisfy
  /// epsilon <= p <= 1/2 - eta.
  void validate() const;

  std::uint32_t min_degree() const { return kind == TreeKind::homogeneous ? degree : d_min; }
  std::uint32_t max_degree() const { return kind == TreeKind::homogeneous ? degree : d_max; }

  /// Upper bound on every directed-edge hitting probability,
  /// (1/2 - eta) / (1/2 + eta).
  double rho() const { return (0.5 - eta) / (0.5 + eta); }

  friend bool operator==(const TreeSpec&, const TreeSpec&) = default;
};

/// Outgoing transition probabilities of one vertex, indexed by neighbor slot.
struct KernelRow {
  std::uint32_t degree = 0;
  std::array<double, kMaxDegree> p{};
};

/// Lazily generated infinite rooted tree. Vertex records are a pure function
/// of (spec, word); the record cache is internal and safe for concurrent
/// readers.
class TreeModel {
 public:
  explicit TreeModel(TreeSpec spec);

  TreeModel(const TreeModel&) = delete;
  TreeModel& operator=(const TreeModel&) = delete;

  const TreeSpec& spec() const noexcept { return spec_; }
  double rho() const noexcept { return rho_; }

  /// True when every vertex at a given depth looks the same (homogeneous
  /// degree with the uniform kernel).
  bool radially_symmetric() const noexcept {
    return spec_.kind == TreeKind::homogeneous && spec_.kernel == KernelRule::uniform;
  }

  /// Kernel row without address validation.
  KernelRow row(const VertexId& x) const;

  std::uint32_t degree(const VertexId& x) const;
  /// Number of children; degree minus one off the root.
  std::uint32_t children(const VertexId& x) const;
  /// p(x, y) for neighbors x ~ y; throws AddressError otherwise.
  double p(const VertexId& x, const VertexId& y) const;
  std::vector<VertexId> neighbors(const VertexId& x) const;

  bool valid(const VertexId& x) const;
  /// Throws AddressError if some child index is out of range.
  void check(const VertexId& x) const;

  std::size_t cached_records() const;

 private:
  KernelRow generate(std::uint64_t key) const;
  std::uint64_t key_of(const VertexId& x) const noexcept;

  TreeSpec spec_;
  double rho_;
  KernelRow uniform_row_{};

  static constexpr std::size_t kShards = 16;
  static constexpr std::size_t kShardCapacity = 1u << 16;
  struct Shard {
    mutable std::shared_mutex mutex;
    std::unordered_map<std::uint64_t, KernelRow> rows;
  };
  mutable std::array<Shard, kShards> cache_;
};

/// Throws ConfigError if the row violates the uniformity bounds or does not
/// sum to one within 1e-12.
void check_kernel_row(const TreeSpec& spec, const KernelRow& row);

/// A boundary point given by its geodesic ray from the root. Indices past the
/// recorded prefix are 0, so the ray is total.
class BoundaryRay {
 public:
  BoundaryRay() = default;
  explicit BoundaryRay(std::vector<std::uint32_t> prefix) : prefix_(std::move(prefix)) {}

  std::uint32_t index(std::size_t k) const noexcept {
    return k < prefix_.size() ? prefix_[k] : 0;
  }
  /// gamma(k), the ray vertex at depth k.
  VertexId vertex(std::size_t k) const;
  std::size_t recorded_depth() const noexcept { return prefix_.size(); }
  const std::vector<std::uint32_t>& prefix() const noexcept { return prefix_; }

  /// Depth of the deepest ray vertex that is an ancestor of (or equal to) y.
  std::size_t meet_depth(const VertexId& y) const noexcept;

  friend bool operator==(const BoundaryRay&, const BoundaryRay&) = default;

 private:
  std::vector<std::uint32_t> prefix_;
};

std::size_t degree(const TreeModel& t, const VertexId& x);

/// Unique simple path from x to y, endpoints included.
std::vector<VertexId> geodesic(const TreeModel& t, const VertexId& x, const VertexId& y);

/// Closest ray vertex to y.
VertexId project(const TreeModel& t, const BoundaryRay& theta, const VertexId& y);

/// d(y, ray).
inline std::size_t ray_distance(const BoundaryRay& theta, const VertexId& y) noexcept {
  return y.depth() - theta.meet_depth(y);
}

bool tube_contains(const TreeModel& t, const BoundaryRay& theta, std::size_t c, const VertexId& y);

/// Tube vertices with d(o, y) <= depth, each once, ordered by projection
/// depth and then depth-first within each hanging subtree.
std::vector<VertexId> tube_enumerate(const TreeModel& t, const BoundaryRay& theta, std::size_t c,
                                     std::size_t depth);

/// All vertices with d(o, y) <= radius in breadth-first order.
std::vector<VertexId> ball_enumerate(const TreeModel& t, std::size_t radius);

}  // namespace treepot
