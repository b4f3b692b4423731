#include "blockmap/quadrangulation_sampler.hpp"

#include <algorithm>

#include "blockmap/errors.hpp"

namespace blockmap {

std::vector<std::int8_t> uniform_dyck_path(std::int64_t n, Rng& rng) {
  if (n < 0) throw InvalidArgument("negative path length");
  const auto len = static_cast<std::size_t>(2 * n + 1);
  std::vector<std::int8_t> steps(len, -1);
  std::fill(steps.begin(), steps.begin() + n, std::int8_t{1});
  for (std::size_t k = len - 1; k > 0; --k) std::swap(steps[k], steps[static_cast<std::size_t>(rng.below(k + 1))]);
  std::int64_t sum = 0, best = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < len; ++i) {
    sum += steps[i];
    if (sum < best) {
      best = sum;
      start = i + 1;
    }
  }
  std::vector<std::int8_t> dyck(len - 1);
  for (std::size_t i = 0; i + 1 < len; ++i) dyck[i] = steps[(start + i) % len];
  return dyck;
}

Quadrangulation sample_uniform_quadrangulation(std::int64_t n, Rng& rng) {
  if (n < 1) throw InvalidArgument("a quadrangulation needs at least one face");
  if (n > (std::int64_t{1} << 28)) throw InvalidArgument("n too large");
  const auto dyck = uniform_dyck_path(n, rng);
  const auto corners = static_cast<std::int32_t>(2 * n);
  const auto vertices = static_cast<std::size_t>(n + 1);
  std::vector<std::int32_t> vert(static_cast<std::size_t>(corners)), parent(vertices, -1), label(vertices, 0);
  std::int32_t cur = 0, fresh = 1;
  for (std::int32_t i = 0; i < corners; ++i) {
    vert[static_cast<std::size_t>(i)] = cur;
    if (dyck[static_cast<std::size_t>(i)] > 0) {
      const std::int32_t c = fresh++;
      parent[static_cast<std::size_t>(c)] = cur;
      label[static_cast<std::size_t>(c)] = label[static_cast<std::size_t>(cur)] + static_cast<std::int32_t>(rng.below(3)) - 1;
      cur = c;
    } else {
      cur = parent[static_cast<std::size_t>(cur)];
    }
  }
  const auto [lo_it, hi_it] = std::minmax_element(label.begin(), label.end());
  const std::int32_t lo = *lo_it, hi = *hi_it;
  auto corner_label = [&](std::int32_t i) { return label[static_cast<std::size_t>(vert[static_cast<std::size_t>(i)])] - lo; };

  // Successor of each corner: next corner cyclically with label one less, -1 for the extra vertex.
  std::vector<std::int32_t> succ(static_cast<std::size_t>(corners), -1);
  {
    std::vector<std::int32_t> next_at(static_cast<std::size_t>(hi - lo + 1), -1);
    for (std::int32_t i = 2 * corners - 1; i >= 0; --i) {
      const std::int32_t c = i % corners;
      const std::int32_t l = corner_label(c);
      if (i < corners && l > 0) succ[static_cast<std::size_t>(c)] = next_at[static_cast<std::size_t>(l - 1)] % corners;
      next_at[static_cast<std::size_t>(l)] = i;
    }
  }

  // Arc from corner i: half-edge 2i at the corner, 2i+1 at its successor.
  const auto half_edges = static_cast<std::size_t>(2 * corners);
  std::vector<HalfEdge> alpha(half_edges), sigma(half_edges);
  for (std::int32_t i = 0; i < corners; ++i) {
    alpha[static_cast<std::size_t>(2 * i)] = 2 * i + 1;
    alpha[static_cast<std::size_t>(2 * i + 1)] = 2 * i;
  }
  // Incoming arcs per corner, bucketed by increasing distance (i - j mod 2n): a
  // stable counting pass over j = i-1, i-2, ... is the same as scanning j backwards.
  std::vector<std::int32_t> in_count(static_cast<std::size_t>(corners) + 1, 0);
  for (std::int32_t j = 0; j < corners; ++j)
    if (succ[static_cast<std::size_t>(j)] >= 0) ++in_count[static_cast<std::size_t>(succ[static_cast<std::size_t>(j)]) + 1];
  for (std::size_t i = 0; i < static_cast<std::size_t>(corners); ++i) in_count[i + 1] += in_count[i];
  std::vector<std::int32_t> in_list(static_cast<std::size_t>(in_count.back()));
  {
    std::vector<std::int32_t> fill(in_count.begin(), in_count.end() - 1);
    // For a fixed target i the sources j precede i cyclically; visiting j from
    // i-1 downwards means a single backward sweep over two laps, keeping the first visit.
    std::vector<std::uint8_t> placed(static_cast<std::size_t>(corners), 0);
    for (std::int32_t k = 2 * corners - 1; k >= 0; --k) {
      const std::int32_t j = k % corners;
      const std::int32_t t = succ[static_cast<std::size_t>(j)];
      if (t < 0 || placed[static_cast<std::size_t>(j)]) continue;
      // j reaches t going forward; it is visited in the lap where k < t + corners and k >= t.
      if (k >= t + corners || k < t) continue;
      placed[static_cast<std::size_t>(j)] = 1;
      in_list[static_cast<std::size_t>(fill[static_cast<std::size_t>(t)]++)] = j;
    }
  }
  // Rotation at each tree vertex: its corners in contour order, each contributing
  // incoming arcs by increasing distance, then its own outgoing arc.
  std::vector<HalfEdge> first(vertices, -1), last(vertices, -1);
  auto push = [&](std::int32_t v, HalfEdge h) {
    const auto vv = static_cast<std::size_t>(v);
    if (first[vv] < 0) first[vv] = h;
    else sigma[static_cast<std::size_t>(last[vv])] = h;
    last[vv] = h;
  };
  for (std::int32_t i = 0; i < corners; ++i) {
    const std::int32_t v = vert[static_cast<std::size_t>(i)];
    for (std::int32_t e = in_count[static_cast<std::size_t>(i)]; e < in_count[static_cast<std::size_t>(i) + 1]; ++e)
      push(v, 2 * in_list[static_cast<std::size_t>(e)] + 1);
    push(v, 2 * i);
  }
  for (std::size_t v = 0; v < vertices; ++v) sigma[static_cast<std::size_t>(last[v])] = first[v];
  // The extra vertex sees the arcs from minimal corners in reverse contour order.
  HalfEdge v0_first = -1, v0_prev = -1;
  for (std::int32_t i = corners - 1; i >= 0; --i) {
    if (succ[static_cast<std::size_t>(i)] >= 0) continue;
    const HalfEdge h = 2 * i + 1;
    if (v0_first < 0) v0_first = h;
    else sigma[static_cast<std::size_t>(v0_prev)] = h;
    v0_prev = h;
  }
  sigma[static_cast<std::size_t>(v0_prev)] = v0_first;
  const HalfEdge root = rng.coin() ? 0 : 1;
  return Quadrangulation::from_map(HalfEdgeMap(std::move(alpha), std::move(sigma), root));
}

}  // namespace blockmap
