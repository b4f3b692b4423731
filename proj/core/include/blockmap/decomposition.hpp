#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "blockmap/half_edge_map.hpp"

namespace blockmap {

/// Ordered rooted tree stored in preorder, with optional block decorations.
///
/// `outdegree[i]` is the number of children of the i-th node in preorder. When
/// present, `decoration[i]` indexes the block carried by node i, or is -1 for a
/// leaf (vertex-map sentinel). Undecorated trees (bare Galton-Watson samples)
/// leave `decoration` empty.
struct BlockTree {
  std::vector<std::int32_t> outdegree;
  std::vector<std::int32_t> decoration;

  std::size_t node_count() const { return outdegree.size(); }
  std::size_t edge_count() const { return outdegree.empty() ? 0 : outdegree.size() - 1; }
  /// Number of internal nodes, i.e. number of blocks.
  std::size_t internal_count() const;
  bool decorated() const { return !decoration.empty(); }

  bool operator==(const BlockTree&) const = default;
};

/// Single leaf decorated by the vertex map.
BlockTree leaf_tree();

/// Checks the preorder sequence is a valid Lukasiewicz word with even outdegrees
/// and, if decorated, that decorations are consistent with leaves.
bool is_valid_block_tree(const BlockTree& t);

/// Parent of each node in preorder (-1 for the root).
std::vector<std::int32_t> tree_parents(const BlockTree& t);
/// Depth of each node in preorder.
std::vector<std::int32_t> tree_depths(const BlockTree& t);

struct MapDecomposition {
  BlockTree tree;
  std::vector<HalfEdgeMap> blocks;  // canonical, in preorder of their nodes
};

struct QuadDecomposition {
  BlockTree tree;
  std::vector<Quadrangulation> blocks;  // canonical, in preorder of their nodes
};

MapDecomposition block_decompose(const HalfEdgeMap& m);
QuadDecomposition block_decompose(const Quadrangulation& q);

/// Inverse of block_decompose. Blocks need not be canonical; child i of a node
/// attaches to the i-th half-edge (maps) or black half-edge (quadrangulations)
/// of its canonical form. Throws InvalidArgument on size mismatches.
HalfEdgeMap assemble(const BlockTree& t, std::span<const HalfEdgeMap> blocks);
Quadrangulation assemble(const BlockTree& t, std::span<const Quadrangulation> blocks);

/// Block membership of every half-edge.
struct BlockLabels {
  std::vector<std::int32_t> of;  // per half-edge
  std::int32_t count = 0;
};

/// Maximal 2-connected submaps, by a cut-vertex search (loops are blocks on their own).
BlockLabels map_block_labels(const HalfEdgeMap& m);
/// Maximal simple components, as classes of faces: a half-edge belongs to the
/// block of its face.
BlockLabels quad_block_labels(const Quadrangulation& q);

/// Tree of blocks without extracting the blocks themselves.
struct BlockSkeleton {
  BlockTree tree;                      // undecorated
  std::vector<std::int32_t> label;     // per node: block label, -1 for leaves
  std::vector<HalfEdge> root;          // per node: root half-edge of the block, -1 for leaves
};

BlockSkeleton map_skeleton(const HalfEdgeMap& m, const BlockLabels& labels);
BlockSkeleton quad_skeleton(const Quadrangulation& q, const BlockLabels& labels);

/// The block with label `label`, rooted at `root`, in canonical form.
HalfEdgeMap extract_map_block(const HalfEdgeMap& m, const BlockLabels& labels, std::int32_t label,
                              HalfEdge root);
Quadrangulation extract_quad_block(const Quadrangulation& q, const BlockLabels& labels,
                                   std::int32_t label, HalfEdge root);

/// Blocks of `q` for which `keep(faces)` returns true, in preorder of their nodes.
/// `keep` is called once per block, in preorder, so it may track quotas.
std::vector<Quadrangulation> extract_quad_blocks(const Quadrangulation& q, const BlockLabels& labels,
                                                 const std::function<bool(std::int64_t)>& keep);

/// At least one edge and no cut vertex; the loop map counts as 2-connected.
bool is_two_connected(const HalfEdgeMap& m);

}  // namespace blockmap
