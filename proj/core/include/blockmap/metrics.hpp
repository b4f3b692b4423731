#pragma once

#include <cstdint>
#include <vector>

#include "blockmap/half_edge_map.hpp"

namespace blockmap {

/// Vertex adjacency of a map, one entry per half-edge (multi-edges repeated).
struct VertexGraph {
  std::vector<std::int32_t> offsets;
  std::vector<std::int32_t> targets;
  std::vector<std::int32_t> vertex_of;  // per half-edge

  std::int32_t vertex_count() const { return static_cast<std::int32_t>(offsets.size()) - 1; }
};

VertexGraph vertex_graph(const HalfEdgeMap& m);

/// Graph distances from `source` to every vertex. Throws InvalidArgument if
/// `source` is not a vertex.
std::vector<std::int32_t> bfs_distances(const VertexGraph& g, std::int32_t source);
std::vector<std::int32_t> bfs_distances(const HalfEdgeMap& m, std::int32_t source);

enum class DiameterMode { Exact, TwoSweepLowerBound };

/// Largest allowed edge count for DiameterMode::Exact.
inline constexpr std::size_t kExactDiameterMaxEdges = 100000;

/// Exact mode runs a BFS from every vertex and throws InvalidArgument above
/// kExactDiameterMaxEdges. The two-sweep mode returns a lower bound.
std::int32_t diameter(const HalfEdgeMap& m, DiameterMode mode);
std::int32_t diameter(const VertexGraph& g, DiameterMode mode);

}  // namespace blockmap
