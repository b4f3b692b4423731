#include "blockmap/metrics.hpp"

#include <algorithm>
#include <string>

#include "blockmap/errors.hpp"

namespace blockmap {

VertexGraph vertex_graph(const HalfEdgeMap& m) {
  const auto vi = index_vertices(m);
  VertexGraph g;
  g.offsets = vi.offsets;
  g.vertex_of = vi.vertex_of;
  g.targets.resize(vi.half_edges.size());
  for (std::size_t i = 0; i < vi.half_edges.size(); ++i)
    g.targets[i] = vi.vertex_of[static_cast<std::size_t>(m.alpha(vi.half_edges[i]))];
  return g;
}

std::vector<std::int32_t> bfs_distances(const VertexGraph& g, std::int32_t source) {
  const std::int32_t n = g.vertex_count();
  if (source < 0 || source >= n)
    throw InvalidArgument("vertex " + std::to_string(source) + " out of range [0, " + std::to_string(n) + ")");
  std::vector<std::int32_t> dist(static_cast<std::size_t>(n), -1);
  std::vector<std::int32_t> queue;
  queue.reserve(static_cast<std::size_t>(n));
  dist[static_cast<std::size_t>(source)] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto v = static_cast<std::size_t>(queue[head]);
    for (auto e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      const auto w = static_cast<std::size_t>(g.targets[static_cast<std::size_t>(e)]);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(static_cast<std::int32_t>(w));
      }
    }
  }
  return dist;
}

std::vector<std::int32_t> bfs_distances(const HalfEdgeMap& m, std::int32_t source) {
  return bfs_distances(vertex_graph(m), source);
}

std::int32_t diameter(const VertexGraph& g, DiameterMode mode) {
  const std::int32_t n = g.vertex_count();
  if (n <= 1) return 0;
  if (mode == DiameterMode::Exact) {
    if (g.targets.size() / 2 > kExactDiameterMaxEdges)
      throw InvalidArgument("exact diameter limited to " + std::to_string(kExactDiameterMaxEdges) + " edges");
    std::int32_t best = 0;
    for (std::int32_t v = 0; v < n; ++v) {
      const auto d = bfs_distances(g, v);
      best = std::max(best, *std::max_element(d.begin(), d.end()));
    }
    return best;
  }
  const auto d0 = bfs_distances(g, 0);
  const auto far = static_cast<std::int32_t>(std::max_element(d0.begin(), d0.end()) - d0.begin());
  const auto d1 = bfs_distances(g, far);
  return *std::max_element(d1.begin(), d1.end());
}

std::int32_t diameter(const HalfEdgeMap& m, DiameterMode mode) { return diameter(vertex_graph(m), mode); }

}  // namespace blockmap
