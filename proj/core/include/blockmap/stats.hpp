#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "blockmap/decomposition.hpp"
#include "blockmap/half_edge_map.hpp"
#include "blockmap/model_sampler.hpp"
#include "blockmap/rng.hpp"

namespace blockmap {

/// Block sizes (outdegree/2 of internal nodes) in decreasing order, truncated or
/// zero-padded to `count` entries.
std::vector<std::int64_t> largest_blocks(const BlockTree& t, std::size_t count = 3);
std::int32_t tree_height(const BlockTree& t);
/// Mean depth of a uniform node, i.e. the mean tree distance from the root.
double mean_tree_depth(const BlockTree& t);

/// Graph distances from the root vertex to `reps` independent uniform vertices.
std::vector<std::int32_t> distance_sample(const HalfEdgeMap& m, Rng& rng, std::size_t reps);

/// Median of a non-empty sample (mean of the two middle values for even sizes).
double median(std::vector<double> v);

struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  double stderr_slope = 0;
  double r2 = 0;
  std::size_t points = 0;
};

/// Ordinary least squares of ln(stat) on ln(n). Needs at least three points with
/// two distinct n; throws InvalidArgument on nonpositive values.
ExponentFit exponent_fit(std::span<const std::pair<double, double>> points);

/// Distance from the root vertex of `b` to the closer endpoint of the edge of `h`.
std::int32_t edge_distance(const HalfEdgeMap& b, HalfEdge h);
/// Distance from the root vertex of `b` to the vertex of the corner of `h`.
std::int32_t corner_distance(const HalfEdgeMap& b, HalfEdge h);

struct KappaOptions {
  ObjectKind kind = ObjectKind::Quad;
  /// Block sizes above this are not drawn; their contribution is covered by the bias bound.
  std::int64_t j_max = 4096;
  /// When positive, every sample uses blocks of this size (estimates D_j itself).
  std::int64_t fixed_j = 0;
  std::uint64_t max_rejections = 10'000'000;
};

struct KappaEstimate {
  double mean = 0;
  double stderr_mean = 0;
  std::uint64_t samples = 0;
  std::uint64_t truncated = 0;  // draws with j > j_max, counted as zero
  /// Upper bound on the bias from truncation, using D_j <= j + 1. Infinite at u = 9/5.
  double tail_bias_bound = 0;
};

/// Monte Carlo estimate of sum_j 2j mu^u(2j) D_j: size-biased j, uniform block of
/// size j, uniform edge (quadrangulations) or corner (maps). Needs u >= 9/5.
KappaEstimate kappa_mc(double u, std::uint64_t samples, Rng& rng, const KappaOptions& options = {});

struct SampleRecord {
  double u = 0;
  std::int64_t n = 0;
  std::int64_t replica = 0;
  std::uint64_t seed = 0;
  ObjectKind kind = ObjectKind::Map;
  TreeMethod method = TreeMethod::RejectionCycle;
  bool approx = false;
  std::int64_t LB1 = 0, LB2 = 0, LB3 = 0;
  std::int64_t b = 0;
  std::int32_t height = 0;
  double mean_depth = 0;
  double dist = -1;     // median root-to-uniform-vertex distance, -1 if not measured
  std::int32_t diam_lb = -1;
  double ms = 0;
  std::string error;    // non-empty when a sampler limit was hit
};

}  // namespace blockmap
