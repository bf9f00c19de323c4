#include "treepot/vertex.hpp"

#include <charconv>

#include "treepot/errors.hpp"
#include "treepot/rng.hpp"

namespace treepot {

VertexId VertexId::parent() const {
  if (is_root()) throw AddressError("the root has no parent");
  return prefix(word_.size() - 1);
}

VertexId VertexId::child(std::uint32_t c) const {
  VertexId out = *this;
  out.push(c);
  return out;
}

VertexId VertexId::prefix(std::size_t n) const {
  if (n > word_.size()) throw AddressError("prefix longer than the word");
  return VertexId(std::vector<std::uint32_t>(word_.begin(), word_.begin() + static_cast<std::ptrdiff_t>(n)));
}

void VertexId::step(std::uint32_t slot) {
  if (is_root()) {
    word_.push_back(slot);
  } else if (slot == 0) {
    word_.pop_back();
  } else {
    word_.push_back(slot - 1);
  }
}

std::string VertexId::to_string() const {
  if (word_.empty()) return "/";
  std::string out;
  for (auto c : word_) {
    out.push_back('/');
    out += std::to_string(c);
  }
  return out;
}

VertexId VertexId::parse(std::string_view text) {
  if (text.empty() || text.front() != '/') throw AddressError("vertex must start with '/': " + std::string(text));
  std::vector<std::uint32_t> word;
  std::size_t pos = 1;
  while (pos < text.size()) {
    auto end = text.find('/', pos);
    if (end == std::string_view::npos) end = text.size();
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, value);
    if (ec != std::errc() || ptr != text.data() + end || end == pos) {
      throw AddressError("bad vertex word: " + std::string(text));
    }
    word.push_back(value);
    pos = end + 1;
    if (end + 1 == text.size()) throw AddressError("trailing '/' in vertex: " + std::string(text));
  }
  return VertexId(std::move(word));
}

std::size_t common_prefix(const VertexId& a, const VertexId& b) noexcept {
  const auto wa = a.word();
  const auto wb = b.word();
  const std::size_t n = std::min(wa.size(), wb.size());
  std::size_t i = 0;
  while (i < n && wa[i] == wb[i]) ++i;
  return i;
}

std::size_t VertexIdHash::operator()(const VertexId& v) const noexcept {
  std::uint64_t h = 0x7F4A7C15ull + v.depth();
  for (auto c : v.word()) h = mix_key(h, c);
  return static_cast<std::size_t>(h);
}

}  // namespace treepot
