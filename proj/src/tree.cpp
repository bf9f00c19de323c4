#include "treepot/tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <span>

#include "treepot/errors.hpp"
#include "treepot/rng.hpp"

namespace treepot {

namespace {

constexpr std::uint64_t kRootSalt = 0x5EEDF00DCAFEBABEull;
constexpr std::uint64_t kDegreeSalt = 1;
constexpr std::uint64_t kWeightSalt = 100;

// Euclidean projection of w onto {p : lo <= p_i <= hi, sum p = 1}.
void project_capped_simplex(std::span<double> w, double lo, double hi) {
  auto mass = [&](double shift) {
    double s = 0.0;
    for (double v : w) s += std::clamp(v + shift, lo, hi);
    return s;
  };
  double a = lo - *std::max_element(w.begin(), w.end());
  double b = hi - *std::min_element(w.begin(), w.end());
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    if (mass(m) < 1.0) a = m; else b = m;
  }
  const double shift = std::abs(mass(a) - 1.0) <= std::abs(mass(b) - 1.0) ? a : b;
  for (double& v : w) v = std::clamp(v + shift, lo, hi);
}

}  // namespace

void TreeSpec::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (!(eta > 0.0) || !(eta < 0.5)) throw ConfigError("eta must lie in (0, 1/2)");
  if (kind == TreeKind::homogeneous) {
    if (degree < 3 || degree > kMaxDegree) {
      throw ConfigError("degree must lie in [3, " + std::to_string(kMaxDegree) + "]");
    }
  } else {
    if (d_min < 3 || d_max < d_min || d_max > kMaxDegree) {
      throw ConfigError("need 3 <= d_min <= d_max <= " + std::to_string(kMaxDegree));
    }
  }
  const double hi = 0.5 - eta;
  if (epsilon > hi) throw ConfigError("epsilon exceeds 1/2 - eta");
  for (std::uint32_t d = min_degree(); d <= max_degree(); ++d) {
    if (kernel == KernelRule::uniform) {
      const double p = 1.0 / d;
      if (p < epsilon || p > hi) {
        throw ConfigError("uniform kernel 1/" + std::to_string(d) + " violates epsilon <= p <= 1/2 - eta");
      }
    } else {
      if (d * epsilon > 1.0 + 1e-12 || d * hi < 1.0 - 1e-12) {
        throw ConfigError("no kernel of degree " + std::to_string(d) + " fits in [epsilon, 1/2 - eta]");
      }
    }
  }
}

void check_kernel_row(const TreeSpec& spec, const KernelRow& row) {
  const double hi = 0.5 - spec.eta;
  double sum = 0.0;
  for (std::uint32_t s = 0; s < row.degree; ++s) {
    const double p = row.p[s];
    if (p < spec.epsilon || p > hi) throw ConfigError("kernel entry outside [epsilon, 1/2 - eta]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ConfigError("kernel row does not sum to one");
}

TreeModel::TreeModel(TreeSpec spec) : spec_(spec) {
  spec_.validate();
  rho_ = spec_.rho();
  if (radially_symmetric()) {
    uniform_row_ = generate(0);
  }
}

std::uint64_t TreeModel::key_of(const VertexId& x) const noexcept {
  std::uint64_t key = splitmix64(spec_.seed ^ kRootSalt);
  for (auto c : x.word()) key = mix_key(key, c);
  return key;
}

KernelRow TreeModel::generate(std::uint64_t key) const {
  KernelRow row;
  if (spec_.kind == TreeKind::homogeneous) {
    row.degree = spec_.degree;
  } else {
    const std::uint64_t span = spec_.d_max - spec_.d_min + 1;
    row.degree = spec_.d_min + static_cast<std::uint32_t>(mix_key(key, kDegreeSalt) % span);
  }
  const std::span<double> p(row.p.data(), row.degree);
  if (spec_.kernel == KernelRule::uniform) {
    std::fill(p.begin(), p.end(), 1.0 / row.degree);
    return row;
  }
  double total = 0.0;
  for (std::uint32_t s = 0; s < row.degree; ++s) {
    p[s] = 0.05 + unit_double(mix_key(key, kWeightSalt + s));
    total += p[s];
  }
  for (double& v : p) v /= total;
  project_capped_simplex(p, spec_.epsilon, 0.5 - spec_.eta);
  return row;
}

KernelRow TreeModel::row(const VertexId& x) const {
  if (radially_symmetric()) return uniform_row_;
  const std::uint64_t key = key_of(x);
  Shard& shard = cache_[key % kShards];
  {
    std::shared_lock lock(shard.mutex);
    if (auto it = shard.rows.find(key); it != shard.rows.end()) return it->second;
  }
  KernelRow fresh = generate(key);
  std::unique_lock lock(shard.mutex);
  if (shard.rows.size() < kShardCapacity) shard.rows.emplace(key, fresh);
  return fresh;
}

std::size_t TreeModel::cached_records() const {
  std::size_t n = 0;
  for (auto& shard : cache_) {
    std::shared_lock lock(shard.mutex);
    n += shard.rows.size();
  }
  return n;
}

bool TreeModel::valid(const VertexId& x) const {
  if (radially_symmetric()) {
    for (std::size_t i = 0; i < x.depth(); ++i) {
      const std::uint32_t limit = i == 0 ? spec_.degree : spec_.degree - 1;
      if (x[i] >= limit) return false;
    }
    return true;
  }
  VertexId walk;
  for (auto c : x.word()) {
    const std::uint32_t deg = row(walk).degree;
    const std::uint32_t limit = walk.is_root() ? deg : deg - 1;
    if (c >= limit) return false;
    walk.push(c);
  }
  return true;
}

void TreeModel::check(const VertexId& x) const {
  if (!valid(x)) throw AddressError("no such vertex: " + x.to_string());
}

std::uint32_t TreeModel::degree(const VertexId& x) const {
  check(x);
  return row(x).degree;
}

std::uint32_t TreeModel::children(const VertexId& x) const {
  const std::uint32_t deg = row(x).degree;
  return x.is_root() ? deg : deg - 1;
}

double TreeModel::p(const VertexId& x, const VertexId& y) const {
  check(x);
  check(y);
  const KernelRow r = row(x);
  if (!x.is_root() && y.depth() + 1 == x.depth() && common_prefix(x, y) == y.depth()) return r.p[0];
  if (y.depth() == x.depth() + 1 && common_prefix(x, y) == x.depth()) return r.p[x.child_slot(y.last())];
  throw AddressError(x.to_string() + " and " + y.to_string() + " are not neighbors");
}

std::vector<VertexId> TreeModel::neighbors(const VertexId& x) const {
  check(x);
  std::vector<VertexId> out;
  if (!x.is_root()) out.push_back(x.parent());
  const std::uint32_t n = children(x);
  for (std::uint32_t c = 0; c < n; ++c) out.push_back(x.child(c));
  return out;
}

VertexId BoundaryRay::vertex(std::size_t k) const {
  std::vector<std::uint32_t> word(k);
  for (std::size_t i = 0; i < k; ++i) word[i] = index(i);
  return VertexId(std::move(word));
}

std::size_t BoundaryRay::meet_depth(const VertexId& y) const noexcept {
  std::size_t k = 0;
  while (k < y.depth() && y[k] == index(k)) ++k;
  return k;
}

std::size_t degree(const TreeModel& t, const VertexId& x) { return t.degree(x); }

std::vector<VertexId> geodesic(const TreeModel& t, const VertexId& x, const VertexId& y) {
  t.check(x);
  t.check(y);
  const std::size_t lca = common_prefix(x, y);
  std::vector<VertexId> path;
  path.reserve(x.depth() + y.depth() - 2 * lca + 1);
  for (std::size_t k = x.depth(); k > lca; --k) path.push_back(x.prefix(k));
  for (std::size_t k = lca; k <= y.depth(); ++k) path.push_back(y.prefix(k));
  return path;
}

VertexId project(const TreeModel& t, const BoundaryRay& theta, const VertexId& y) {
  t.check(y);
  return y.prefix(theta.meet_depth(y));
}

bool tube_contains(const TreeModel& t, const BoundaryRay& theta, std::size_t c, const VertexId& y) {
  t.check(y);
  return ray_distance(theta, y) <= c;
}

std::vector<VertexId> tube_enumerate(const TreeModel& t, const BoundaryRay& theta, std::size_t c,
                                     std::size_t depth) {
  std::vector<VertexId> out;
  VertexId spine;
  // Depth-first listing of the subtree below `v` down to `limit`.
  std::function<void(VertexId&, std::size_t)> hang = [&](VertexId& v, std::size_t limit) {
    out.push_back(v);
    if (v.depth() >= limit) return;
    const std::uint32_t n = t.children(v);
    for (std::uint32_t j = 0; j < n; ++j) {
      v.push(j);
      hang(v, limit);
      v.pop();
    }
  };
  for (std::size_t m = 0; m <= depth; ++m) {
    out.push_back(spine);
    if (c > 0 && m < depth) {
      const std::size_t limit = std::min(depth, m + c);
      const std::uint32_t n = t.children(spine);
      for (std::uint32_t j = 0; j < n; ++j) {
        if (j == theta.index(m)) continue;
        VertexId v = spine.child(j);
        hang(v, limit);
      }
    }
    spine.push(theta.index(m));
  }
  return out;
}

std::vector<VertexId> ball_enumerate(const TreeModel& t, std::size_t radius) {
  std::vector<VertexId> out{VertexId::root()};
  for (std::size_t head = 0; head < out.size(); ++head) {
    if (out[head].depth() >= radius) continue;
    const std::uint32_t n = t.children(out[head]);
    for (std::uint32_t j = 0; j < n; ++j) out.push_back(out[head].child(j));
  }
  return out;
}

}  // namespace treepot
