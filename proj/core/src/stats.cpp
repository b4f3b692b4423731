#include "blockmap/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blockmap/errors.hpp"
#include "blockmap/metrics.hpp"
#include "blockmap/offspring.hpp"
#include "blockmap/tutte.hpp"

namespace blockmap {

std::vector<std::int64_t> largest_blocks(const BlockTree& t, std::size_t count) {
  std::vector<std::int64_t> sizes;
  for (auto d : t.outdegree)
    if (d > 0) sizes.push_back(d / 2);
  const std::size_t keep = std::min(count, sizes.size());
  std::partial_sort(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(keep), sizes.end(),
                    std::greater<>());
  sizes.resize(count, 0);
  return sizes;
}

std::int32_t tree_height(const BlockTree& t) {
  const auto depth = tree_depths(t);
  return depth.empty() ? 0 : *std::max_element(depth.begin(), depth.end());
}

double mean_tree_depth(const BlockTree& t) {
  const auto depth = tree_depths(t);
  if (depth.empty()) return 0;
  double sum = 0;
  for (auto d : depth) sum += d;
  return sum / static_cast<double>(depth.size());
}

std::vector<std::int32_t> distance_sample(const HalfEdgeMap& m, Rng& rng, std::size_t reps) {
  const VertexGraph g = vertex_graph(m);
  const auto dist = bfs_distances(g, g.vertex_of[static_cast<std::size_t>(m.root())]);
  std::vector<std::int32_t> out(reps);
  for (auto& d : out) d = dist[rng.below(dist.size())];
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) throw InvalidArgument("median of an empty sample");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lo + hi) / 2;
}

ExponentFit exponent_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw InvalidArgument("exponent fit needs at least three points");
  const auto k = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (auto [n, s] : points) {
    if (!(n > 0) || !(s > 0)) throw InvalidArgument("exponent fit needs positive values");
    sx += std::log(n);
    sy += std::log(s);
  }
  const double mx = sx / k, my = sy / k;
  double sxx = 0, sxy = 0, syy = 0;
  for (auto [n, s] : points) {
    const double dx = std::log(n) - mx, dy = std::log(s) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0) throw InvalidArgument("exponent fit needs two distinct n");
  ExponentFit f;
  f.points = points.size();
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  const double rss = std::max(0.0, syy - f.slope * sxy);
  f.r2 = syy > 0 ? 1 - rss / syy : 1;
  f.stderr_slope = std::sqrt(rss / (k - 2) / sxx);
  return f;
}

std::int32_t edge_distance(const HalfEdgeMap& b, HalfEdge h) {
  const VertexGraph g = vertex_graph(b);
  const auto dist = bfs_distances(g, g.vertex_of[static_cast<std::size_t>(b.root())]);
  const auto v = g.vertex_of[static_cast<std::size_t>(h)];
  const auto w = g.vertex_of[static_cast<std::size_t>(b.alpha(h))];
  return std::min(dist[static_cast<std::size_t>(v)], dist[static_cast<std::size_t>(w)]);
}

std::int32_t corner_distance(const HalfEdgeMap& b, HalfEdge h) {
  const VertexGraph g = vertex_graph(b);
  const auto dist = bfs_distances(g, g.vertex_of[static_cast<std::size_t>(b.root())]);
  return dist[static_cast<std::size_t>(g.vertex_of[static_cast<std::size_t>(h)])];
}

KappaEstimate kappa_mc(double u, std::uint64_t samples, Rng& rng, const KappaOptions& options) {
  if (samples == 0) throw InvalidArgument("kappa_mc needs at least one sample");
  if (options.j_max < 1) throw InvalidArgument("j_max must be positive");
  const PhaseParams p = params(u);
  if (p.regime == Regime::Subcritical && !p.near_critical) throw InvalidArgument("kappa is defined for u >= 9/5");
  const OffspringDistribution biased(p, options.j_max, OffspringDistribution::Bias::SizeBiased);

  KappaEstimate est;
  est.samples = samples;
  if (options.fixed_j > 0) {
    est.tail_bias_bound = 0;
  } else if (p.w <= 1 + 1e-12) {
    est.tail_bias_bound = std::numeric_limits<double>::infinity();
  } else {
    // Beyond L the size-biased masses are at most nu_L (L/j)^{3/2} w^{L-j}, and D_j <= j + 1.
    const auto L = static_cast<double>(options.j_max);
    const double nu_L = biased.mass(options.j_max);
    double bound = 0, term = 1;
    for (std::int64_t j = options.j_max + 1; term > 1e-18 * (bound + 1e-300) || j < options.j_max + 8; ++j) {
      const auto jd = static_cast<double>(j);
      term = nu_L * std::pow(L / jd, 1.5) * std::pow(p.w, L - jd) * (jd + 1);
      bound += term;
      if (j > options.j_max + 100000) break;
    }
    est.tail_bias_bound = bound;
  }

  BlockHarvester harvester(options.max_rejections);
  double sum = 0, sum2 = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::int64_t j = options.fixed_j > 0 ? options.fixed_j : biased.sample_half_bounded(rng, options.j_max);
    if (j < 0) {
      ++est.truncated;
      continue;
    }
    const Quadrangulation q = harvester.take({j}, rng).front();
    double d = 0;
    if (options.kind == ObjectKind::Quad) {
      const auto& m = q.map();
      // Both half-edges of an edge give the same distance, so a uniform half-edge is a uniform edge.
      d = edge_distance(m, static_cast<HalfEdge>(rng.below(m.half_edge_count())));
    } else {
      const HalfEdgeMap m = tutte_inverse(q);
      d = corner_distance(m, static_cast<HalfEdge>(rng.below(m.half_edge_count())));
    }
    sum += d;
    sum2 += d * d;
  }
  const auto k = static_cast<double>(samples);
  est.mean = sum / k;
  const double var = samples > 1 ? std::max(0.0, (sum2 - k * est.mean * est.mean) / (k - 1)) : 0;
  est.stderr_mean = std::sqrt(var / k);
  return est;
}

}  // namespace blockmap
