#include "blockmap/half_edge_map.hpp"

#include <algorithm>
#include <unordered_set>

#include "blockmap/errors.hpp"

namespace blockmap {

HalfEdgeMap::HalfEdgeMap(std::vector<HalfEdge> alpha, std::vector<HalfEdge> sigma, HalfEdge root)
    : alpha_(std::move(alpha)), sigma_(std::move(sigma)), root_(root) {
  if (alpha_.size() != sigma_.size()) throw InvalidArgument("alpha and sigma sizes differ");
  if (alpha_.size() % 2 != 0) throw InvalidArgument("half-edge count must be even");
  const auto n = static_cast<HalfEdge>(alpha_.size());
  if (n == 0) {
    if (root_ != 0) throw InvalidArgument("vertex map has root 0");
    return;
  }
  if (root_ < 0 || root_ >= n) throw InvalidArgument("root out of range");
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    if (alpha_[i] < 0 || alpha_[i] >= n || sigma_[i] < 0 || sigma_[i] >= n)
      throw InvalidArgument("half-edge index out of range at " + std::to_string(i));
  }
}

HalfEdgeMap HalfEdgeMap::edge_map() { return HalfEdgeMap({1, 0}, {0, 1}, 0); }

HalfEdgeMap HalfEdgeMap::loop_map() { return HalfEdgeMap({1, 0}, {1, 0}, 0); }

Cycles cycles_of(std::span<const HalfEdge> perm) {
  Cycles c;
  c.id.assign(perm.size(), -1);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (c.id[i] >= 0) continue;
    auto h = static_cast<HalfEdge>(i);
    do {
      c.id[static_cast<std::size_t>(h)] = c.count;
      h = perm[static_cast<std::size_t>(h)];
    } while (c.id[static_cast<std::size_t>(h)] < 0);
    ++c.count;
  }
  return c;
}

std::vector<HalfEdge> inverse_permutation(std::span<const HalfEdge> perm) {
  std::vector<HalfEdge> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[static_cast<std::size_t>(perm[i])] = static_cast<HalfEdge>(i);
  return inv;
}

std::vector<HalfEdge> face_permutation(const HalfEdgeMap& m) {
  std::vector<HalfEdge> phi(m.half_edge_count());
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = m.phi(static_cast<HalfEdge>(i));
  return phi;
}

VertexIndex index_vertices(const HalfEdgeMap& m) {
  VertexIndex vi;
  const std::size_t n = m.half_edge_count();
  vi.vertex_of.assign(n, -1);
  vi.half_edges.reserve(n);
  vi.offsets.push_back(0);
  if (n == 0) {
    vi.count = 1;
    vi.offsets.push_back(0);
    return vi;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (vi.vertex_of[i] >= 0) continue;
    auto h = static_cast<HalfEdge>(i);
    do {
      vi.vertex_of[static_cast<std::size_t>(h)] = vi.count;
      vi.half_edges.push_back(h);
      h = m.sigma(h);
    } while (h != static_cast<HalfEdge>(i));
    ++vi.count;
    vi.offsets.push_back(static_cast<std::int32_t>(vi.half_edges.size()));
  }
  return vi;
}

Diagnostics validate(const HalfEdgeMap& m) {
  Diagnostics d;
  const std::size_t n = m.half_edge_count();
  if (n == 0) {
    d.vertices = 1;
    d.faces = 1;
    return d;
  }
  auto fail = [&](std::string what, std::optional<HalfEdge> at) {
    d.ok = false;
    d.failed = std::move(what);
    d.index = at;
    return d;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto h = static_cast<HalfEdge>(i);
    const HalfEdge a = m.alpha(h);
    if (a == h || m.alpha(a) != h) return fail("involution", h);
  }
  std::vector<std::uint8_t> hit(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto s = static_cast<std::size_t>(m.sigma(static_cast<HalfEdge>(i)));
    if (hit[s]) return fail("permutation", static_cast<HalfEdge>(i));
    hit[s] = 1;
  }
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<HalfEdge> stack{m.root()};
  seen[static_cast<std::size_t>(m.root())] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const HalfEdge h = stack.back();
    stack.pop_back();
    for (HalfEdge g : {m.alpha(h), m.sigma(h)}) {
      if (!seen[static_cast<std::size_t>(g)]) {
        seen[static_cast<std::size_t>(g)] = 1;
        ++reached;
        stack.push_back(g);
      }
    }
  }
  d.vertices = cycles_of(m.sigma_table()).count;
  d.edges = static_cast<std::int64_t>(n / 2);
  d.faces = cycles_of(face_permutation(m)).count;
  if (reached != n) {
    for (std::size_t i = 0; i < n; ++i)
      if (!seen[i]) return fail("connectivity", static_cast<HalfEdge>(i));
  }
  if (d.vertices - d.edges + d.faces != 2) return fail("genus", std::nullopt);
  return d;
}

std::vector<HalfEdge> dfs_order(std::span<const HalfEdge> alpha, std::span<const HalfEdge> sigma,
                                HalfEdge root) {
  std::vector<HalfEdge> order;
  if (alpha.empty()) return order;
  std::vector<std::uint8_t> entered(alpha.size(), 0);
  auto enter = [&](HalfEdge h) {
    HalfEdge x = h;
    do {
      entered[static_cast<std::size_t>(x)] = 1;
      order.push_back(x);
      x = sigma[static_cast<std::size_t>(x)];
    } while (x != h);
  };
  struct Frame {
    HalfEdge start;
    HalfEdge cur;
    bool started;
  };
  std::vector<Frame> stack;
  enter(root);
  stack.push_back({root, root, false});
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.started && f.cur == f.start) {
      stack.pop_back();
      continue;
    }
    const HalfEdge x = f.cur;
    f.cur = sigma[static_cast<std::size_t>(x)];
    f.started = true;
    const HalfEdge y = alpha[static_cast<std::size_t>(x)];
    if (!entered[static_cast<std::size_t>(y)]) {
      enter(y);
      stack.push_back({y, y, false});
    }
  }
  return order;
}

std::vector<HalfEdge> dfs_order(const HalfEdgeMap& m) {
  return dfs_order(m.alpha_table(), m.sigma_table(), m.root());
}

HalfEdgeMap canonical(const HalfEdgeMap& m) {
  if (m.is_vertex_map()) return m;
  const auto order = dfs_order(m);
  std::vector<HalfEdge> label(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) label[static_cast<std::size_t>(order[i])] = static_cast<HalfEdge>(i);
  std::vector<HalfEdge> alpha(order.size()), sigma(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    alpha[i] = label[static_cast<std::size_t>(m.alpha(order[i]))];
    sigma[i] = label[static_cast<std::size_t>(m.sigma(order[i]))];
  }
  return HalfEdgeMap(std::move(alpha), std::move(sigma), 0);
}

bool same_rooted_map(const HalfEdgeMap& a, const HalfEdgeMap& b) {
  if (a.half_edge_count() != b.half_edge_count()) return false;
  return canonical(a) == canonical(b);
}

bool is_simple(const HalfEdgeMap& m) {
  const auto vi = index_vertices(m);
  std::unordered_set<std::uint64_t> pairs;
  pairs.reserve(m.size() * 2);
  for (std::size_t i = 0; i < m.half_edge_count(); ++i) {
    const auto h = static_cast<HalfEdge>(i);
    const HalfEdge a = m.alpha(h);
    if (h > a) continue;
    auto u = static_cast<std::uint64_t>(vi.vertex_of[static_cast<std::size_t>(h)]);
    auto v = static_cast<std::uint64_t>(vi.vertex_of[static_cast<std::size_t>(a)]);
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    if (!pairs.insert((u << 32) | v).second) return false;
  }
  return true;
}

Quadrangulation Quadrangulation::from_map(HalfEdgeMap m) {
  if (m.is_vertex_map()) throw InvalidArgument("the vertex map is not a quadrangulation");
  const std::size_t n = m.half_edge_count();
  // Every face of degree 4.
  {
    std::vector<std::uint8_t> seen(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[i]) continue;
      int deg = 0;
      auto h = static_cast<HalfEdge>(i);
      do {
        seen[static_cast<std::size_t>(h)] = 1;
        ++deg;
        h = m.phi(h);
      } while (h != static_cast<HalfEdge>(i));
      if (deg != 4) throw InvalidArgument("face of degree " + std::to_string(deg) + " at half-edge " + std::to_string(i));
    }
  }
  const auto vi = index_vertices(m);
  std::vector<std::int8_t> colour(static_cast<std::size_t>(vi.count), -1);
  std::vector<std::int32_t> queue;
  const std::int32_t r = vi.vertex_of[static_cast<std::size_t>(m.root())];
  colour[static_cast<std::size_t>(r)] = 1;
  queue.push_back(r);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::int32_t v = queue[qi];
    for (HalfEdge h : vi.around(v)) {
      const std::int32_t w = vi.vertex_of[static_cast<std::size_t>(m.alpha(h))];
      auto& cw = colour[static_cast<std::size_t>(w)];
      const auto want = static_cast<std::int8_t>(1 - colour[static_cast<std::size_t>(v)]);
      if (cw < 0) {
        cw = want;
        queue.push_back(w);
      } else if (cw != want) {
        throw InvalidArgument("quadrangulation is not bipartite");
      }
    }
  }
  Quadrangulation q;
  q.black_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    q.black_[i] = static_cast<std::uint8_t>(colour[static_cast<std::size_t>(vi.vertex_of[i])] == 1);
  q.map_ = std::move(m);
  return q;
}

std::vector<HalfEdge> black_order(const Quadrangulation& q) {
  const auto& m = q.map();
  std::vector<HalfEdge> derived_alpha(m.half_edge_count());
  for (std::size_t i = 0; i < derived_alpha.size(); ++i) {
    const auto h = static_cast<HalfEdge>(i);
    derived_alpha[i] = q.is_black(h) ? m.phi(m.phi(h)) : h;
  }
  return dfs_order(derived_alpha, m.sigma_table(), m.root());
}

Quadrangulation canonical(const Quadrangulation& q) {
  const auto& m = q.map();
  const auto black = black_order(q);
  const std::size_t k = black.size();
  std::vector<HalfEdge> label(m.half_edge_count(), -1);
  for (std::size_t i = 0; i < k; ++i) {
    label[static_cast<std::size_t>(black[i])] = static_cast<HalfEdge>(i);
    label[static_cast<std::size_t>(m.alpha(black[i]))] = static_cast<HalfEdge>(i + k);
  }
  std::vector<HalfEdge> alpha(2 * k), sigma(2 * k);
  for (std::size_t i = 0; i < m.half_edge_count(); ++i) {
    const auto l = static_cast<std::size_t>(label[i]);
    alpha[l] = label[static_cast<std::size_t>(m.alpha(static_cast<HalfEdge>(i)))];
    sigma[l] = label[static_cast<std::size_t>(m.sigma(static_cast<HalfEdge>(i)))];
  }
  return Quadrangulation::from_map(HalfEdgeMap(std::move(alpha), std::move(sigma), 0));
}

bool same_rooted_map(const Quadrangulation& a, const Quadrangulation& b) {
  if (a.map().half_edge_count() != b.map().half_edge_count()) return false;
  return canonical(a) == canonical(b);
}

}  // namespace blockmap
