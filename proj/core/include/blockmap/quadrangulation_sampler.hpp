#pragma once

#include <cstdint>
#include <vector>

#include "blockmap/half_edge_map.hpp"
#include "blockmap/rng.hpp"

namespace blockmap {

/// Uniform plane tree with n edges as a Dyck word (+1 up, -1 down), by the cycle lemma.
std::vector<std::int8_t> uniform_dyck_path(std::int64_t n, Rng& rng);

/// Uniform rooted quadrangulation with n faces.
///
/// Labels a uniform plane tree with i.i.d. increments in {-1, 0, +1}, links every
/// corner to the next corner carrying a smaller label (or to an extra vertex
/// below the minimum) and roots at the arc of the first corner, oriented by a fair
/// coin. Each quadrangulation with n faces has n + 2 vertices, hence the same number
/// of preimages, so the output is uniform.
Quadrangulation sample_uniform_quadrangulation(std::int64_t n, Rng& rng);

}  // namespace blockmap
