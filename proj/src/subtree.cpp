#include "treepot/subtree.hpp"

#include <algorithm>
#include <string>

#include "treepot/errors.hpp"

namespace treepot {

SubtreeIndex SubtreeIndex::grow(const TreeModel& t, std::size_t max_depth,
                                const std::function<bool(const VertexId&)>& keep, std::size_t cap) {
  SubtreeIndex out;
  out.max_depth_ = max_depth;
  out.nodes_.push_back(Node{});
  VertexId v;
  for (std::uint32_t head = 0; head < out.nodes_.size(); ++head) {
    Node& n = out.nodes_[head];
    if (n.depth >= max_depth) {
      n.first_child = static_cast<std::uint32_t>(out.nodes_.size());
      continue;
    }
    v = out.vertex(head);
    const std::uint32_t first = static_cast<std::uint32_t>(out.nodes_.size());
    const std::uint32_t depth = n.depth + 1;
    const std::uint32_t count = t.children(v);
    std::uint16_t kept = 0;
    for (std::uint32_t c = 0; c < count; ++c) {
      v.push(c);
      if (keep(v)) {
        if (out.nodes_.size() >= cap) {
          throw ResourceError("subtree exceeds " + std::to_string(cap) + " vertices");
        }
        Node child;
        child.parent = head;
        child.depth = depth;
        child.child_index = static_cast<std::uint16_t>(c);
        out.nodes_.push_back(child);
        ++kept;
      }
      v.pop();
    }
    out.nodes_[head].first_child = first;
    out.nodes_[head].n_children = kept;
  }
  return out;
}

SubtreeIndex SubtreeIndex::ball(const TreeModel& t, std::size_t radius, std::size_t cap) {
  return grow(t, radius, [](const VertexId&) { return true; }, cap);
}

std::uint32_t SubtreeIndex::child(std::uint32_t i, std::uint32_t child_index) const noexcept {
  const Node& n = nodes_[i];
  for (std::uint32_t k = n.first_child; k < n.first_child + n.n_children; ++k) {
    if (nodes_[k].child_index == child_index) return k;
  }
  return kNone;
}

std::optional<std::uint32_t> SubtreeIndex::locate(const VertexId& v) const {
  std::uint32_t i = 0;
  for (auto c : v.word()) {
    i = child(i, c);
    if (i == kNone) return std::nullopt;
  }
  return i;
}

VertexId SubtreeIndex::vertex(std::uint32_t i) const {
  std::vector<std::uint32_t> word(nodes_[i].depth);
  for (std::size_t k = word.size(); k > 0; --k) {
    word[k - 1] = nodes_[i].child_index;
    i = nodes_[i].parent;
  }
  return VertexId(std::move(word));
}

}  // namespace treepot
