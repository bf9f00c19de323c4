#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "treepot/tree.hpp"

namespace treepot {

/// A finite root-connected subtree stored in breadth-first order. The
/// in-set children of a node are contiguous and sorted by child index.
class SubtreeIndex {
 public:
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  struct Node {
    std::uint32_t parent = kNone;
    std::uint32_t first_child = 0;
    std::uint32_t depth = 0;
    std::uint16_t n_children = 0;
    std::uint16_t child_index = 0;  // last letter of the word
  };

  /// Grows from the root, keeping a child when `keep(child)` holds and its
  /// depth is at most `max_depth`. Throws ResourceError past `cap` nodes.
  static SubtreeIndex grow(const TreeModel& t, std::size_t max_depth,
                           const std::function<bool(const VertexId&)>& keep, std::size_t cap);
  static SubtreeIndex ball(const TreeModel& t, std::size_t radius, std::size_t cap);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t max_depth() const noexcept { return max_depth_; }
  const Node& node(std::uint32_t i) const { return nodes_[i]; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }

  /// In-set child of node i with the given child index, or kNone.
  std::uint32_t child(std::uint32_t i, std::uint32_t child_index) const noexcept;
  std::optional<std::uint32_t> locate(const VertexId& v) const;
  VertexId vertex(std::uint32_t i) const;

 private:
  std::vector<Node> nodes_;
  std::size_t max_depth_ = 0;
};

}  // namespace treepot
