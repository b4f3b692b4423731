#include "blockmap/tutte.hpp"

#include "blockmap/errors.hpp"

namespace blockmap {

Quadrangulation tutte_angular(const HalfEdgeMap& m) {
  if (m.is_vertex_map()) throw InvalidArgument("the vertex map has no corners to star");
  const auto n = static_cast<HalfEdge>(m.half_edge_count());
  const auto sigma_inv = inverse_permutation(m.sigma_table());
  std::vector<HalfEdge> alpha(2 * static_cast<std::size_t>(n)), sigma(2 * static_cast<std::size_t>(n));
  for (HalfEdge h = 0; h < n; ++h) {
    const auto b = static_cast<std::size_t>(h);
    const auto w = static_cast<std::size_t>(h + n);
    alpha[b] = h + n;
    alpha[w] = h;
    sigma[b] = m.sigma(h);
    // Around the white vertex of a face, the corners follow the face boundary backwards.
    sigma[w] = sigma_inv[static_cast<std::size_t>(m.alpha(h))] + n;
  }
  return Quadrangulation::from_map(HalfEdgeMap(std::move(alpha), std::move(sigma), m.root()));
}

HalfEdgeMap tutte_inverse(const Quadrangulation& q) {
  const auto& m = q.map();
  const std::size_t total = m.half_edge_count();
  std::vector<HalfEdge> label(total, -1);
  HalfEdge next = 0;
  for (std::size_t i = 0; i < total; ++i)
    if (q.is_black(static_cast<HalfEdge>(i))) label[i] = next++;
  std::vector<HalfEdge> alpha(static_cast<std::size_t>(next)), sigma(static_cast<std::size_t>(next));
  for (std::size_t i = 0; i < total; ++i) {
    const auto h = static_cast<HalfEdge>(i);
    if (!q.is_black(h)) continue;
    const auto l = static_cast<std::size_t>(label[i]);
    sigma[l] = label[static_cast<std::size_t>(m.sigma(h))];
    alpha[l] = label[static_cast<std::size_t>(m.phi(m.phi(h)))];
  }
  return HalfEdgeMap(std::move(alpha), std::move(sigma), label[static_cast<std::size_t>(q.root())]);
}

}  // namespace blockmap
