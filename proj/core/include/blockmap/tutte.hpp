#pragma once

#include "blockmap/half_edge_map.hpp"

namespace blockmap {

/// Angular map of `m`: a white vertex in each face joined to every corner.
///
/// Half-edge h of `m` becomes the black-origin half-edge h of the result, sitting
/// in the corner of h; its partner is h + 2E. The root keeps its index and
/// points from black to white. Throws InvalidArgument for the vertex map.
Quadrangulation tutte_angular(const HalfEdgeMap& m);

/// Inverse of tutte_angular, up to half-edge relabelling.
///
/// Black-origin half-edges become the half-edges of the map, numbered in
/// increasing order of their index in `q`.
HalfEdgeMap tutte_inverse(const Quadrangulation& q);

}  // namespace blockmap
