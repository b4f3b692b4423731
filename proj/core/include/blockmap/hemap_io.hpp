#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "blockmap/half_edge_map.hpp"

namespace blockmap {

/// Contents of a HEMAP v1 text file.
///
///     HEMAP 1 <half_edge_count> <root> [QUAD <colour of the origin of half-edge 0>]
///     <i> <alpha(i)> <sigma(i)>      (one line per half-edge, i increasing)
///
/// Colours are 1 for black and 0 for white.
struct HemapFile {
  HalfEdgeMap map;
  std::optional<Quadrangulation> quad;
};

void write_hemap(std::ostream& out, const HalfEdgeMap& m);
void write_hemap(std::ostream& out, const Quadrangulation& q);
std::string to_hemap(const HalfEdgeMap& m);
std::string to_hemap(const Quadrangulation& q);

/// Parses and validates a HEMAP v1 stream. Throws ParseError on malformed text
/// and InvalidArgument when the tables do not describe a planar map (or a
/// quadrangulation with the announced colouring).
HemapFile read_hemap(std::istream& in);
HemapFile parse_hemap(const std::string& text);

}  // namespace blockmap
