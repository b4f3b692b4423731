#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace blockmap {

using HalfEdge = std::int32_t;

/// Rooted planar map stored as a rotation system.
///
/// Half-edges are dense indices 0..2E-1. `alpha` pairs the two halves of each
/// edge; `sigma` gives the next half-edge counterclockwise around the origin
/// vertex. The face permutation is `phi = sigma o alpha`, and the face of a
/// half-edge `h` is the phi-cycle containing it: the face sitting in the
/// clockwise sector just before `h` at its origin. The corner of `h` is the
/// sector between `h` and `sigma(h)`.
///
/// The vertex map (a single vertex, no edges) is the empty rotation system.
class HalfEdgeMap {
 public:
  HalfEdgeMap() = default;
  /// Takes ownership of the tables. Checks sizes and index ranges only; use
  /// validate() for the structural invariants.
  HalfEdgeMap(std::vector<HalfEdge> alpha, std::vector<HalfEdge> sigma, HalfEdge root);

  static HalfEdgeMap vertex_map() { return {}; }
  static HalfEdgeMap edge_map();
  static HalfEdgeMap loop_map();

  std::size_t half_edge_count() const { return alpha_.size(); }
  /// Number of edges, i.e. the size of the map.
  std::size_t size() const { return alpha_.size() / 2; }
  bool is_vertex_map() const { return alpha_.empty(); }

  HalfEdge root() const { return root_; }
  HalfEdge alpha(HalfEdge h) const { return alpha_[static_cast<std::size_t>(h)]; }
  HalfEdge sigma(HalfEdge h) const { return sigma_[static_cast<std::size_t>(h)]; }
  HalfEdge phi(HalfEdge h) const { return sigma(alpha(h)); }

  std::span<const HalfEdge> alpha_table() const { return alpha_; }
  std::span<const HalfEdge> sigma_table() const { return sigma_; }

  bool operator==(const HalfEdgeMap&) const = default;

 private:
  std::vector<HalfEdge> alpha_;
  std::vector<HalfEdge> sigma_;
  HalfEdge root_ = 0;
};

/// Labels of the cycles of a permutation, numbered by first appearance.
struct Cycles {
  std::vector<std::int32_t> id;
  std::int32_t count = 0;
};

Cycles cycles_of(std::span<const HalfEdge> perm);
std::vector<HalfEdge> inverse_permutation(std::span<const HalfEdge> perm);

/// Face permutation sigma o alpha as a table.
std::vector<HalfEdge> face_permutation(const HalfEdgeMap& m);

/// Vertices of a map with their incident half-edges in rotation order (CSR layout).
struct VertexIndex {
  std::vector<std::int32_t> vertex_of;   // per half-edge
  std::vector<std::int32_t> offsets;     // size count+1
  std::vector<HalfEdge> half_edges;      // grouped by vertex, counterclockwise
  std::int32_t count = 0;

  std::span<const HalfEdge> around(std::int32_t v) const {
    return std::span<const HalfEdge>(half_edges).subspan(
        static_cast<std::size_t>(offsets[static_cast<std::size_t>(v)]),
        static_cast<std::size_t>(offsets[static_cast<std::size_t>(v) + 1] - offsets[static_cast<std::size_t>(v)]));
  }
};

VertexIndex index_vertices(const HalfEdgeMap& m);

struct Diagnostics {
  bool ok = true;
  /// Name of the first violated invariant: "size", "range", "involution",
  /// "permutation", "connectivity", "genus"; empty when ok.
  std::string failed;
  /// First offending half-edge, when the invariant is local.
  std::optional<HalfEdge> index;
  std::int64_t vertices = 0;
  std::int64_t edges = 0;
  std::int64_t faces = 0;
};

/// Checks involution, permutation, transitivity and Euler genus 0.
Diagnostics validate(const HalfEdgeMap& m);

/// Half-edges in left-to-right depth-first order from `root`.
///
/// Vertices are entered through a half-edge; on entry every half-edge of the
/// vertex is emitted in counterclockwise order starting from the entry
/// half-edge, then the search descends through each of them in that order.
/// The order only depends on the rooted map, not on the labelling.
std::vector<HalfEdge> dfs_order(std::span<const HalfEdge> alpha, std::span<const HalfEdge> sigma,
                                HalfEdge root);
std::vector<HalfEdge> dfs_order(const HalfEdgeMap& m);

/// Relabels half-edges by dfs_order, so the root becomes 0.
HalfEdgeMap canonical(const HalfEdgeMap& m);

/// Equality of rooted maps up to half-edge relabelling.
bool same_rooted_map(const HalfEdgeMap& a, const HalfEdgeMap& b);

/// No loops and no multiple edges.
bool is_simple(const HalfEdgeMap& m);

/// Rooted quadrangulation of the sphere with its black/white vertex colouring.
///
/// The root half-edge always leaves a black vertex. Its size is the number of
/// faces, which is half the number of edges.
class Quadrangulation {
 public:
  Quadrangulation() = default;

  /// Checks every face has degree 4 and computes the colouring. Throws
  /// InvalidArgument otherwise. The vertex map is not a quadrangulation.
  static Quadrangulation from_map(HalfEdgeMap m);

  const HalfEdgeMap& map() const { return map_; }
  std::size_t size() const { return map_.size() / 2; }
  HalfEdge root() const { return map_.root(); }
  bool is_black(HalfEdge h) const { return black_[static_cast<std::size_t>(h)] != 0; }

  bool operator==(const Quadrangulation&) const = default;

 private:
  HalfEdgeMap map_;
  std::vector<std::uint8_t> black_;  // colour of the origin of each half-edge
};

/// Black-origin half-edges of `q` in the order given by the map they encode
/// through the angular bijection (rotation sigma, pairing phi o phi).
std::vector<HalfEdge> black_order(const Quadrangulation& q);

/// Relabels so that the i-th black half-edge of black_order() gets label i and
/// its partner gets label i + 2n, with n the number of faces.
Quadrangulation canonical(const Quadrangulation& q);
bool same_rooted_map(const Quadrangulation& a, const Quadrangulation& b);

}  // namespace blockmap
