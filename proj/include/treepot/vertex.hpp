#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace treepot {

/// A vertex addressed by the child indices taken from the root. The empty
/// word is the root o.
///
/// Neighbor slots: for a non-root vertex slot 0 is the parent and slot s >= 1
/// is child s - 1; for the root slot s is child s.
class VertexId {
 public:
  VertexId() = default;
  explicit VertexId(std::vector<std::uint32_t> word) : word_(std::move(word)) {}
  VertexId(std::initializer_list<std::uint32_t> word) : word_(word) {}

  static VertexId root() { return {}; }

  std::size_t depth() const noexcept { return word_.size(); }
  bool is_root() const noexcept { return word_.empty(); }
  std::span<const std::uint32_t> word() const noexcept { return word_; }
  std::uint32_t operator[](std::size_t i) const { return word_[i]; }
  std::uint32_t last() const { return word_.back(); }

  VertexId parent() const;
  VertexId child(std::uint32_t c) const;
  VertexId prefix(std::size_t n) const;

  void push(std::uint32_t c) { word_.push_back(c); }
  void pop() { word_.pop_back(); }
  /// Moves to the neighbor in the given slot.
  void step(std::uint32_t slot);
  /// Neighbor slot of child c.
  std::uint32_t child_slot(std::uint32_t c) const noexcept {
    return is_root() ? c : c + 1;
  }

  /// "/" for the root, otherwise "/i0/i1/...".
  std::string to_string() const;
  static VertexId parse(std::string_view text);

  friend auto operator<=>(const VertexId&, const VertexId&) = default;

 private:
  std::vector<std::uint32_t> word_;
};

std::size_t common_prefix(const VertexId& a, const VertexId& b) noexcept;

/// Tree distance, from the common-prefix LCA.
inline std::size_t distance(const VertexId& a, const VertexId& b) noexcept {
  return a.depth() + b.depth() - 2 * common_prefix(a, b);
}

inline bool is_neighbor(const VertexId& a, const VertexId& b) noexcept {
  return distance(a, b) == 1;
}

struct VertexIdHash {
  std::size_t operator()(const VertexId& v) const noexcept;
};

}  // namespace treepot
