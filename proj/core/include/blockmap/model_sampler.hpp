#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "blockmap/decomposition.hpp"
#include "blockmap/gw_tree.hpp"
#include "blockmap/half_edge_map.hpp"
#include "blockmap/rng.hpp"

namespace blockmap {

enum class ObjectKind { Map, Quad };
const char* to_string(ObjectKind k);
/// "map" or "quad". Throws InvalidArgument.
ObjectKind parse_object_kind(const std::string& s);

struct SamplerConfig {
  double u = 1;
  std::int64_t n = 1;
  ObjectKind kind = ObjectKind::Map;
  TreeMethod tree_method = TreeMethod::RejectionCycle;
  std::uint64_t seed = 0;
  std::uint64_t max_rejections = 100'000'000;
  std::int64_t j_max = std::int64_t{1} << 16;
  /// Keep surplus blocks across samples of one ModelSampler. Outputs are then
  /// flagged as correlated.
  bool block_pool = false;
};

/// Uniform rooted simple quadrangulation with k faces.
///
/// Draws uniform quadrangulations with max(k, round(3k)) faces until one has a
/// block of k faces and returns the block of the first such node in preorder.
Quadrangulation sample_uniform_simple_quadrangulation(std::int64_t k, Rng& rng,
                                                      std::uint64_t max_rejections = 10'000'000);
/// Uniform rooted 2-connected map with k edges, the inverse angular image of the above.
HalfEdgeMap sample_uniform_two_connected_map(std::int64_t k, Rng& rng, std::uint64_t max_rejections = 10'000'000);

/// Supplies independent uniform simple quadrangulations of requested sizes.
///
/// Every block of every drawn quadrangulation is uniform given the block tree, so
/// all nodes whose size is still requested are harvested from each draw, not just
/// the first one. The selection depends on the tree only.
class BlockHarvester {
 public:
  explicit BlockHarvester(std::uint64_t max_rejections = 10'000'000, bool keep_surplus = false)
      : max_rejections_(max_rejections), keep_surplus_(keep_surplus) {}

  /// One block per entry of `sizes`, in the same order.
  std::vector<Quadrangulation> take(const std::vector<std::int64_t>& sizes, Rng& rng);

  std::uint64_t draws() const { return draws_; }
  std::uint64_t rejections() const { return rejections_; }

 private:
  std::uint64_t max_rejections_;
  bool keep_surplus_;
  std::uint64_t draws_ = 0;
  std::uint64_t rejections_ = 0;
  std::map<std::int64_t, std::vector<Quadrangulation>> surplus_;
};

struct ModelSample {
  ObjectKind kind = ObjectKind::Map;
  HalfEdgeMap map;                       // kind == Map
  Quadrangulation quad;                  // kind == Quad
  BlockTree tree;                        // decorated, blocks indexed in preorder
  std::vector<HalfEdgeMap> map_blocks;   // kind == Map, canonical
  std::vector<Quadrangulation> quad_blocks;  // kind == Quad, canonical
  TreeMethod method = TreeMethod::RejectionCycle;
  bool approximate = false;
  bool correlated = false;
  std::uint64_t tree_rejections = 0;
  std::uint64_t block_draws = 0;
  std::uint64_t rng_digest = 0;

  std::int64_t size() const;
};

/// Sampler for P_{n,u}: conditioned block tree, then independent uniform blocks.
///
/// Copies share the (immutable) tree tables and are cheap; give each thread its own copy.
/// TreeMethod::UniformDirect is only valid at u = 1, where P_{n,1} is uniform: it
/// draws a uniform quadrangulation directly and decomposes it.
class ModelSampler {
 public:
  explicit ModelSampler(const SamplerConfig& config);

  ModelSample sample(Rng& rng);
  /// The block tree alone, for statistics that do not need the blocks.
  GWTreeSample sample_tree(Rng& rng) const;

  const SamplerConfig& config() const { return config_; }

 private:
  SamplerConfig config_;
  std::shared_ptr<const OffspringDistribution> dist_;
  std::shared_ptr<const TreeSampler> trees_;  // shared by copies
  BlockHarvester harvester_;
};

/// One sample with a fresh sampler seeded from config.seed.
ModelSample sample_model(const SamplerConfig& config);
ModelSample sample_model(const SamplerConfig& config, Rng& rng);

}  // namespace blockmap
