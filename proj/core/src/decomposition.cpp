#include "blockmap/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "blockmap/errors.hpp"

namespace blockmap {

namespace {

using Index = std::size_t;
inline Index ix(std::int32_t v) { return static_cast<Index>(v); }

// Next half-edge counterclockwise around the same vertex with the same label.
std::vector<HalfEdge> restricted_rotation(const VertexIndex& vi, const std::vector<std::int32_t>& label,
                                          std::int32_t label_count) {
  std::vector<HalfEdge> next(vi.vertex_of.size(), -1);
  std::vector<std::int32_t> stamp(ix(label_count), -1);
  std::vector<HalfEdge> first(ix(label_count), -1), last(ix(label_count), -1);
  for (std::int32_t v = 0; v < vi.count; ++v) {
    const auto around = vi.around(v);
    for (HalfEdge h : around) {
      const auto b = ix(label[ix(h)]);
      if (stamp[b] != v) {
        stamp[b] = v;
        first[b] = h;
      } else {
        next[ix(last[b])] = h;
      }
      last[b] = h;
    }
    for (HalfEdge h : around) {
      const auto b = ix(label[ix(h)]);
      if (first[b] == h) next[ix(last[b])] = h;
    }
  }
  return next;
}

// dfs_order over one block, sharing the `entered` scratch between blocks (their
// half-edge sets are disjoint, so it never needs resetting).
template <class Alpha>
void block_dfs(HalfEdge root, const std::vector<HalfEdge>& sigma_c, Alpha&& alpha,
               std::vector<std::uint8_t>& entered, std::vector<HalfEdge>& order) {
  order.clear();
  auto enter = [&](HalfEdge h) {
    HalfEdge x = h;
    do {
      entered[ix(x)] = 1;
      order.push_back(x);
      x = sigma_c[ix(x)];
    } while (x != h);
  };
  std::vector<std::pair<HalfEdge, HalfEdge>> stack;  // (start, current)
  std::vector<std::uint8_t> started;
  enter(root);
  stack.emplace_back(root, root);
  started.push_back(0);
  while (!stack.empty()) {
    auto& [start, cur] = stack.back();
    if (started.back() && cur == start) {
      stack.pop_back();
      started.pop_back();
      continue;
    }
    const HalfEdge x = cur;
    cur = sigma_c[ix(x)];
    started.back() = 1;
    const HalfEdge y = alpha(x);
    if (!entered[ix(y)]) {
      enter(y);
      stack.emplace_back(y, y);
      started.push_back(0);
    }
  }
}

// Preorder walk over blocks. `children_of(label, root, out)` fills the ordered
// half-edges carrying the children of a block.
template <class ChildrenOf>
BlockSkeleton build_skeleton(const HalfEdgeMap& m, const BlockLabels& labels, ChildrenOf&& children_of) {
  BlockSkeleton s;
  if (m.is_vertex_map()) {
    s.tree.outdegree.push_back(0);
    s.label.push_back(-1);
    s.root.push_back(-1);
    return s;
  }
  std::vector<std::uint8_t> visited(ix(labels.count), 0);
  std::vector<std::pair<std::int32_t, HalfEdge>> stack;
  std::vector<HalfEdge> order;
  const std::int32_t c0 = labels.of[ix(m.root())];
  visited[ix(c0)] = 1;
  stack.emplace_back(c0, m.root());
  while (!stack.empty()) {
    const auto [c, r] = stack.back();
    stack.pop_back();
    s.label.push_back(c);
    s.root.push_back(r);
    if (c < 0) {
      s.tree.outdegree.push_back(0);
      continue;
    }
    children_of(c, r, order);
    s.tree.outdegree.push_back(static_cast<std::int32_t>(order.size()));
    const std::size_t base = stack.size();
    for (HalfEdge a : order) {
      const HalfEdge p = m.sigma(a);
      const std::int32_t d = labels.of[ix(p)];
      if (d != c && !visited[ix(d)]) {
        visited[ix(d)] = 1;
        stack.emplace_back(d, p);
      } else {
        stack.emplace_back(-1, -1);
      }
    }
    std::reverse(stack.begin() + static_cast<std::ptrdiff_t>(base), stack.end());
  }
  return s;
}

struct MapContext {
  const HalfEdgeMap& m;
  BlockLabels labels;
  std::vector<HalfEdge> sigma_c;
  std::vector<std::uint8_t> entered;

  explicit MapContext(const HalfEdgeMap& map, BlockLabels l)
      : m(map), labels(std::move(l)), entered(map.half_edge_count(), 0) {
    sigma_c = restricted_rotation(index_vertices(m), labels.of, labels.count);
  }

  void order(HalfEdge root, std::vector<HalfEdge>& out) {
    block_dfs(root, sigma_c, [&](HalfEdge h) { return m.alpha(h); }, entered, out);
  }

  // `order` must be the block dfs order from its root.
  HalfEdgeMap extract(const std::vector<HalfEdge>& order, std::vector<HalfEdge>& local) const {
    for (std::size_t i = 0; i < order.size(); ++i) local[ix(order[i])] = static_cast<HalfEdge>(i);
    std::vector<HalfEdge> alpha(order.size()), sigma(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      alpha[i] = local[ix(m.alpha(order[i]))];
      sigma[i] = local[ix(sigma_c[ix(order[i])])];
    }
    return HalfEdgeMap(std::move(alpha), std::move(sigma), 0);
  }
};

struct QuadContext {
  const Quadrangulation& q;
  BlockLabels labels;
  std::vector<HalfEdge> sigma_c;
  std::vector<HalfEdge> sigma_c_inv;
  std::vector<std::uint8_t> entered;

  explicit QuadContext(const Quadrangulation& quad, BlockLabels l)
      : q(quad), labels(std::move(l)), entered(quad.map().half_edge_count(), 0) {
    sigma_c = restricted_rotation(index_vertices(q.map()), labels.of, labels.count);
    sigma_c_inv = inverse_permutation(sigma_c);
  }

  void black(HalfEdge root, std::vector<HalfEdge>& out) {
    const auto& m = q.map();
    block_dfs(root, sigma_c, [&](HalfEdge h) { return m.phi(m.phi(h)); }, entered, out);
  }

  HalfEdge alpha_c(HalfEdge h) const { return sigma_c_inv[ix(q.map().phi(h))]; }

  Quadrangulation extract(const std::vector<HalfEdge>& black, std::vector<HalfEdge>& local) const {
    const std::size_t k = black.size();
    for (std::size_t i = 0; i < k; ++i) {
      local[ix(black[i])] = static_cast<HalfEdge>(i);
      local[ix(alpha_c(black[i]))] = static_cast<HalfEdge>(i + k);
    }
    std::vector<HalfEdge> alpha(2 * k), sigma(2 * k);
    for (std::size_t i = 0; i < k; ++i) {
      for (HalfEdge h : {black[i], alpha_c(black[i])}) {
        const auto l = ix(local[ix(h)]);
        alpha[l] = local[ix(alpha_c(h))];
        sigma[l] = local[ix(sigma_c[ix(h)])];
      }
    }
    return Quadrangulation::from_map(HalfEdgeMap(std::move(alpha), std::move(sigma), 0));
  }
};

struct UnionFind {
  std::vector<std::int32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::int32_t find(std::int32_t x) {
    while (parent[ix(x)] != x) {
      parent[ix(x)] = parent[ix(parent[ix(x)])];
      x = parent[ix(x)];
    }
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[ix(std::max(a, b))] = std::min(a, b);
  }
};

void check_tree(const BlockTree& t) {
  if (!is_valid_block_tree(t)) throw InvalidArgument("invalid block tree");
}

// Block index of every node in preorder (-1 for leaves).
std::vector<std::int32_t> node_blocks(const BlockTree& t, std::size_t block_count) {
  std::vector<std::int32_t> out(t.node_count(), -1);
  std::int32_t next = 0;
  for (std::size_t i = 0; i < t.node_count(); ++i) {
    if (t.outdegree[i] == 0) continue;
    out[i] = t.decorated() ? t.decoration[i] : next++;
    if (out[i] < 0 || ix(out[i]) >= block_count) throw InvalidArgument("decoration out of range");
  }
  return out;
}

}  // namespace

std::size_t BlockTree::internal_count() const {
  return static_cast<std::size_t>(std::count_if(outdegree.begin(), outdegree.end(), [](std::int32_t d) { return d > 0; }));
}

BlockTree leaf_tree() { return BlockTree{{0}, {-1}}; }

bool is_valid_block_tree(const BlockTree& t) {
  if (t.outdegree.empty()) return false;
  if (t.decorated() && t.decoration.size() != t.outdegree.size()) return false;
  std::int64_t open = 1;
  for (std::size_t i = 0; i < t.outdegree.size(); ++i) {
    const std::int32_t d = t.outdegree[i];
    if (d < 0 || d % 2 != 0 || open <= 0) return false;
    if (t.decorated() && ((d == 0) != (t.decoration[i] < 0))) return false;
    open += d - 1;
  }
  return open == 0;
}

std::vector<std::int32_t> tree_parents(const BlockTree& t) {
  std::vector<std::int32_t> parent(t.node_count(), -1);
  std::vector<std::pair<std::int32_t, std::int32_t>> stack;  // (node, children left)
  for (std::size_t i = 0; i < t.node_count(); ++i) {
    while (!stack.empty() && stack.back().second == 0) stack.pop_back();
    if (!stack.empty()) {
      parent[i] = stack.back().first;
      --stack.back().second;
    }
    if (t.outdegree[i] > 0) stack.emplace_back(static_cast<std::int32_t>(i), t.outdegree[i]);
  }
  return parent;
}

std::vector<std::int32_t> tree_depths(const BlockTree& t) {
  const auto parent = tree_parents(t);
  std::vector<std::int32_t> depth(t.node_count(), 0);
  for (std::size_t i = 1; i < t.node_count(); ++i) depth[i] = depth[ix(parent[i])] + 1;
  return depth;
}

BlockLabels map_block_labels(const HalfEdgeMap& m) {
  BlockLabels out;
  const std::size_t n = m.half_edge_count();
  out.of.assign(n, -1);
  if (n == 0) return out;
  const auto vi = index_vertices(m);
  std::vector<std::int32_t> disc(ix(vi.count), -1), low(ix(vi.count), 0);
  std::vector<HalfEdge> edges;  // edge stack, oriented away from the discovering vertex
  struct Frame {
    std::int32_t v;
    HalfEdge parent_edge;  // smaller half-edge of the tree edge into v
    std::int32_t pos;
    HalfEdge tree_he;      // half-edge from the parent, or -1
  };
  std::vector<Frame> stack;
  std::int32_t time = 0;
  auto label_edge = [&](HalfEdge h, std::int32_t b) {
    out.of[ix(h)] = b;
    out.of[ix(m.alpha(h))] = b;
  };
  const std::int32_t r = vi.vertex_of[ix(m.root())];
  disc[ix(r)] = low[ix(r)] = time++;
  stack.push_back({r, -1, vi.offsets[ix(r)], -1});
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.pos == vi.offsets[ix(f.v) + 1]) {
      const Frame done = f;
      stack.pop_back();
      if (stack.empty()) break;
      const std::int32_t u = stack.back().v;
      low[ix(u)] = std::min(low[ix(u)], low[ix(done.v)]);
      if (low[ix(done.v)] >= disc[ix(u)]) {
        HalfEdge h;
        do {
          h = edges.back();
          edges.pop_back();
          label_edge(h, out.count);
        } while (h != done.tree_he);
        ++out.count;
      }
      continue;
    }
    const HalfEdge h = vi.half_edges[ix(f.pos++)];
    const HalfEdge a = m.alpha(h);
    const std::int32_t w = vi.vertex_of[ix(a)];
    if (w == f.v) {
      if (h < a) label_edge(h, out.count++);
      continue;
    }
    if (std::min(h, a) == f.parent_edge) continue;
    if (disc[ix(w)] < 0) {
      edges.push_back(h);
      disc[ix(w)] = low[ix(w)] = time++;
      stack.push_back({w, std::min(h, a), vi.offsets[ix(w)], h});
    } else if (disc[ix(w)] < disc[ix(f.v)]) {
      edges.push_back(h);
      low[ix(f.v)] = std::min(low[ix(f.v)], disc[ix(w)]);
    }
  }
  return out;
}

BlockLabels quad_block_labels(const Quadrangulation& q) {
  const auto& m = q.map();
  const std::size_t n = m.half_edge_count();
  const auto faces = cycles_of(face_permutation(m));
  const auto vi = index_vertices(m);
  UnionFind uf(ix(faces.count));
  auto face = [&](HalfEdge h) { return faces.id[ix(h)]; };
  // Edges between the same two vertices, seen from their black end.
  std::vector<std::int32_t> stamp(ix(vi.count), -1), mult(ix(vi.count), 0);
  std::vector<HalfEdge> first(ix(vi.count), -1), last(ix(vi.count), -1);
  for (std::int32_t b = 0; b < vi.count; ++b) {
    const auto around = vi.around(b);
    if (around.empty() || !q.is_black(around.front())) continue;
    for (HalfEdge h : around) {
      const auto w = ix(vi.vertex_of[ix(m.alpha(h))]);
      if (stamp[w] != b) {
        stamp[w] = b;
        mult[w] = 0;
        first[w] = h;
      } else {
        // Consecutive parallel edges: the faces just inside the region between them.
        uf.unite(face(m.sigma(last[w])), face(h));
      }
      last[w] = h;
      ++mult[w];
    }
    for (HalfEdge h : around) {
      const auto w = ix(vi.vertex_of[ix(m.alpha(h))]);
      if (mult[w] == 1) {
        uf.unite(face(h), face(m.alpha(h)));
      } else if (first[w] == h) {
        uf.unite(face(m.sigma(last[w])), face(h));
      }
    }
  }
  std::vector<std::int32_t> block_of_face(ix(faces.count), -1);
  BlockLabels out;
  out.of.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto f = ix(uf.find(face(static_cast<HalfEdge>(i))));
    if (block_of_face[f] < 0) block_of_face[f] = out.count++;
    out.of[i] = block_of_face[f];
  }
  return out;
}

BlockSkeleton map_skeleton(const HalfEdgeMap& m, const BlockLabels& labels) {
  if (m.is_vertex_map()) return build_skeleton(m, labels, [](auto, auto, auto&) {});
  MapContext ctx(m, labels);
  return build_skeleton(m, labels, [&](std::int32_t, HalfEdge r, std::vector<HalfEdge>& out) { ctx.order(r, out); });
}

BlockSkeleton quad_skeleton(const Quadrangulation& q, const BlockLabels& labels) {
  QuadContext ctx(q, labels);
  return build_skeleton(q.map(), labels, [&](std::int32_t, HalfEdge r, std::vector<HalfEdge>& out) { ctx.black(r, out); });
}

HalfEdgeMap extract_map_block(const HalfEdgeMap& m, const BlockLabels& labels, std::int32_t label, HalfEdge root) {
  if (labels.of.at(ix(root)) != label) throw InvalidArgument("root is not in the requested block");
  MapContext ctx(m, labels);
  std::vector<HalfEdge> order, local(m.half_edge_count(), -1);
  ctx.order(root, order);
  return ctx.extract(order, local);
}

Quadrangulation extract_quad_block(const Quadrangulation& q, const BlockLabels& labels, std::int32_t label,
                                   HalfEdge root) {
  if (labels.of.at(ix(root)) != label) throw InvalidArgument("root is not in the requested block");
  if (!q.is_black(root)) throw InvalidArgument("block root must leave a black vertex");
  QuadContext ctx(q, labels);
  std::vector<HalfEdge> black, local(q.map().half_edge_count(), -1);
  ctx.black(root, black);
  return ctx.extract(black, local);
}

std::vector<Quadrangulation> extract_quad_blocks(const Quadrangulation& q, const BlockLabels& labels,
                                                 const std::function<bool(std::int64_t)>& keep) {
  QuadContext ctx(q, labels);
  std::vector<HalfEdge> local(q.map().half_edge_count(), -1);
  std::vector<Quadrangulation> out;
  build_skeleton(q.map(), ctx.labels, [&](std::int32_t, HalfEdge r, std::vector<HalfEdge>& black) {
    ctx.black(r, black);
    if (keep(static_cast<std::int64_t>(black.size() / 2))) out.push_back(ctx.extract(black, local));
  });
  return out;
}

MapDecomposition block_decompose(const HalfEdgeMap& m) {
  MapDecomposition out;
  if (m.is_vertex_map()) {
    out.tree = leaf_tree();
    return out;
  }
  MapContext ctx(m, map_block_labels(m));
  std::vector<HalfEdge> local(m.half_edge_count(), -1);
  auto skeleton = build_skeleton(m, ctx.labels, [&](std::int32_t, HalfEdge r, std::vector<HalfEdge>& order) {
    ctx.order(r, order);
    out.blocks.push_back(ctx.extract(order, local));
  });
  out.tree = std::move(skeleton.tree);
  out.tree.decoration.assign(out.tree.node_count(), -1);
  std::int32_t next = 0;
  for (std::size_t i = 0; i < out.tree.node_count(); ++i)
    if (out.tree.outdegree[i] > 0) out.tree.decoration[i] = next++;
  return out;
}

QuadDecomposition block_decompose(const Quadrangulation& q) {
  QuadDecomposition out;
  QuadContext ctx(q, quad_block_labels(q));
  std::vector<HalfEdge> local(q.map().half_edge_count(), -1);
  auto skeleton = build_skeleton(q.map(), ctx.labels, [&](std::int32_t, HalfEdge r, std::vector<HalfEdge>& black) {
    ctx.black(r, black);
    out.blocks.push_back(ctx.extract(black, local));
  });
  out.tree = std::move(skeleton.tree);
  out.tree.decoration.assign(out.tree.node_count(), -1);
  std::int32_t next = 0;
  for (std::size_t i = 0; i < out.tree.node_count(); ++i)
    if (out.tree.outdegree[i] > 0) out.tree.decoration[i] = next++;
  return out;
}

HalfEdgeMap assemble(const BlockTree& t, std::span<const HalfEdgeMap> blocks) {
  check_tree(t);
  const auto which = node_blocks(t, blocks.size());
  const auto parent = tree_parents(t);
  const std::size_t nodes = t.node_count();
  std::vector<HalfEdgeMap> canon(nodes);
  std::vector<HalfEdge> offset(nodes, -1);
  HalfEdge total = 0;
  for (std::size_t i = 0; i < nodes; ++i) {
    if (which[i] < 0) continue;
    canon[i] = canonical(blocks[ix(which[i])]);
    if (canon[i].half_edge_count() != ix(t.outdegree[i]))
      throw InvalidArgument("block of " + std::to_string(canon[i].half_edge_count()) + " half-edges at node of outdegree " +
                            std::to_string(t.outdegree[i]));
    offset[i] = total;
    total += t.outdegree[i];
  }
  if (total == 0) return HalfEdgeMap::vertex_map();
  std::vector<HalfEdge> alpha(ix(total)), sigma(ix(total));
  for (std::size_t i = 0; i < nodes; ++i) {
    if (which[i] < 0) continue;
    for (std::size_t h = 0; h < canon[i].half_edge_count(); ++h) {
      alpha[ix(offset[i]) + h] = offset[i] + canon[i].alpha(static_cast<HalfEdge>(h));
      sigma[ix(offset[i]) + h] = offset[i] + canon[i].sigma(static_cast<HalfEdge>(h));
    }
  }
  auto sigma_inv = inverse_permutation(sigma);
  // Child position among its siblings, which is the parent half-edge it hangs from.
  std::vector<std::int32_t> next_child(nodes, 0);
  for (std::size_t i = 1; i < nodes; ++i) {
    const auto p = ix(parent[i]);
    const std::int32_t slot = next_child[p]++;
    if (which[i] < 0) continue;
    const HalfEdge a = offset[p] + slot;
    const HalfEdge rho = offset[i];
    const HalfEdge x = sigma[ix(a)];
    const HalfEdge y = sigma_inv[ix(rho)];
    sigma[ix(a)] = rho;
    sigma_inv[ix(rho)] = a;
    sigma[ix(y)] = x;
    sigma_inv[ix(x)] = y;
  }
  return HalfEdgeMap(std::move(alpha), std::move(sigma), offset[0]);
}

Quadrangulation assemble(const BlockTree& t, std::span<const Quadrangulation> blocks) {
  check_tree(t);
  if (t.outdegree[0] == 0) throw InvalidArgument("a single leaf does not encode a quadrangulation");
  const auto which = node_blocks(t, blocks.size());
  const auto parent = tree_parents(t);
  const std::size_t nodes = t.node_count();
  std::vector<Quadrangulation> canon(nodes);
  std::vector<HalfEdge> offset(nodes, -1);
  HalfEdge total = 0;
  for (std::size_t i = 0; i < nodes; ++i) {
    if (which[i] < 0) continue;
    canon[i] = canonical(blocks[ix(which[i])]);
    const std::size_t black = canon[i].map().half_edge_count() / 2;
    if (black != ix(t.outdegree[i]))
      throw InvalidArgument("block with " + std::to_string(black) + " black half-edges at node of outdegree " +
                            std::to_string(t.outdegree[i]));
    offset[i] = total;
    total += 2 * t.outdegree[i];
  }
  std::vector<HalfEdge> alpha(ix(total)), phi(ix(total));
  for (std::size_t i = 0; i < nodes; ++i) {
    if (which[i] < 0) continue;
    const auto& m = canon[i].map();
    for (std::size_t h = 0; h < m.half_edge_count(); ++h) {
      alpha[ix(offset[i]) + h] = offset[i] + m.alpha(static_cast<HalfEdge>(h));
      phi[ix(offset[i]) + h] = offset[i] + m.phi(static_cast<HalfEdge>(h));
    }
  }
  const auto phi_inv = inverse_permutation(phi);
  // Faces never change: each child replaces one edge of its parent by a 2-cycle
  // enclosing the child, which only re-pairs half-edges.
  std::vector<std::int32_t> slot(nodes, -1), next_child(nodes, 0);
  for (std::size_t i = 1; i < nodes; ++i) slot[i] = next_child[ix(parent[i])]++;
  for (std::size_t j = nodes; j-- > 1;) {
    if (which[j] < 0) continue;
    const auto p = ix(parent[j]);
    const HalfEdge h = offset[p] + slot[j];
    const HalfEdge h_partner = alpha[ix(h)];
    const HalfEdge rho = offset[j];
    const HalfEdge eps_b = alpha[ix(phi_inv[ix(rho)])];
    const HalfEdge eps_w = alpha[ix(eps_b)];
    alpha[ix(h)] = eps_w;
    alpha[ix(eps_w)] = h;
    alpha[ix(eps_b)] = h_partner;
    alpha[ix(h_partner)] = eps_b;
  }
  std::vector<HalfEdge> sigma(ix(total));
  for (std::size_t h = 0; h < sigma.size(); ++h) sigma[h] = phi[ix(alpha[h])];
  return Quadrangulation::from_map(HalfEdgeMap(std::move(alpha), std::move(sigma), offset[0]));
}

bool is_two_connected(const HalfEdgeMap& m) {
  if (m.is_vertex_map()) return false;
  return map_block_labels(m).count == 1;
}

}  // namespace blockmap
