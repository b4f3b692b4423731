#include "blockmap/model_sampler.hpp"

#include <algorithm>
#include <cmath>

#include "blockmap/errors.hpp"
#include "blockmap/quadrangulation_sampler.hpp"
#include "blockmap/tutte.hpp"

namespace blockmap {

namespace {

std::int64_t rejection_target(std::int64_t k) {
  return std::max<std::int64_t>(k, std::llround(3.0 * static_cast<double>(k)));
}

}  // namespace

const char* to_string(ObjectKind k) { return k == ObjectKind::Map ? "map" : "quad"; }

ObjectKind parse_object_kind(const std::string& s) {
  if (s == "map" || s == "Map") return ObjectKind::Map;
  if (s == "quad" || s == "Quad" || s == "quadrangulation") return ObjectKind::Quad;
  throw InvalidArgument("unknown kind '" + s + "' (expected map or quad)");
}

std::vector<Quadrangulation> BlockHarvester::take(const std::vector<std::int64_t>& sizes, Rng& rng) {
  std::map<std::int64_t, std::vector<std::size_t>> wanted;  // size -> output slots still empty
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw InvalidArgument("block size must be positive");
    wanted[sizes[i]].push_back(i);
  }
  std::vector<Quadrangulation> out(sizes.size());
  auto fill = [&](std::int64_t k, Quadrangulation q) {
    auto it = wanted.find(k);
    if (it == wanted.end()) {
      if (keep_surplus_) surplus_[k].push_back(std::move(q));
      return;
    }
    out[it->second.back()] = std::move(q);
    it->second.pop_back();
    if (it->second.empty()) wanted.erase(it);
  };
  for (auto it = surplus_.begin(); it != surplus_.end();) {
    auto w = wanted.find(it->first);
    while (w != wanted.end() && !it->second.empty()) {
      const std::int64_t k = it->first;
      Quadrangulation q = std::move(it->second.back());
      it->second.pop_back();
      fill(k, std::move(q));
      w = wanted.find(k);
    }
    it = it->second.empty() ? surplus_.erase(it) : std::next(it);
  }
  std::uint64_t misses = 0;
  while (!wanted.empty()) {
    const std::int64_t k = wanted.rbegin()->first;
    const Quadrangulation q = sample_uniform_quadrangulation(rejection_target(k), rng);
    ++draws_;
    // Cheap screen on block sizes before building the tree.
    const BlockLabels labels = quad_block_labels(q);
    std::vector<std::int64_t> faces(static_cast<std::size_t>(labels.count), 0);
    for (std::size_t h = 0; h < labels.of.size(); ++h) ++faces[static_cast<std::size_t>(labels.of[h])];
    bool useful = false, hit_target = false;
    for (auto& f : faces) {
      f /= 4;  // four half-edges per face
      if (wanted.count(f)) useful = true;
      if (f == k) hit_target = true;
    }
    if (!hit_target) {
      ++rejections_;
      if (++misses >= max_rejections_) throw RejectionLimitExceeded("no block of size " + std::to_string(k) + " found");
    }
    if (!useful && !keep_surplus_) continue;
    std::map<std::int64_t, std::size_t> quota;
    for (const auto& [size, slots] : wanted) quota[size] = slots.size();
    std::vector<std::int64_t> kept;
    auto blocks = extract_quad_blocks(q, labels, [&](std::int64_t size) {
      auto it = quota.find(size);
      if (it != quota.end() && it->second > 0) {
        --it->second;
      } else if (!keep_surplus_) {
        return false;
      }
      kept.push_back(size);
      return true;
    });
    for (std::size_t i = 0; i < blocks.size(); ++i) fill(kept[i], std::move(blocks[i]));
  }
  return out;
}

Quadrangulation sample_uniform_simple_quadrangulation(std::int64_t k, Rng& rng, std::uint64_t max_rejections) {
  if (k < 1) throw InvalidArgument("block size must be positive");
  for (std::uint64_t attempt = 0; attempt < max_rejections; ++attempt) {
    const Quadrangulation q = sample_uniform_quadrangulation(rejection_target(k), rng);
    const BlockLabels labels = quad_block_labels(q);
    const BlockSkeleton sk = quad_skeleton(q, labels);
    for (std::size_t node = 0; node < sk.tree.node_count(); ++node)
      if (sk.tree.outdegree[node] == 2 * k) return extract_quad_block(q, labels, sk.label[node], sk.root[node]);
  }
  throw RejectionLimitExceeded("no block of size " + std::to_string(k) + " found");
}

HalfEdgeMap sample_uniform_two_connected_map(std::int64_t k, Rng& rng, std::uint64_t max_rejections) {
  return tutte_inverse(sample_uniform_simple_quadrangulation(k, rng, max_rejections));
}

std::int64_t ModelSample::size() const {
  return kind == ObjectKind::Map ? static_cast<std::int64_t>(map.size()) : static_cast<std::int64_t>(quad.size());
}

ModelSampler::ModelSampler(const SamplerConfig& config)
    : config_(config), harvester_(config.max_rejections, config.block_pool) {
  if (!(config_.u > 0) || !std::isfinite(config_.u)) throw InvalidArgument("u must be positive");
  if (config_.n < 1) throw InvalidArgument("n must be at least 1");
  if (config_.tree_method == TreeMethod::UniformDirect) {
    if (config_.u != 1) throw InvalidArgument("uniform direct sampling is only valid at u = 1");
    return;
  }
  dist_ = std::make_shared<OffspringDistribution>(config_.u, config_.j_max);
  trees_ = std::make_shared<const TreeSampler>(dist_, config_.n, config_.tree_method, config_.max_rejections);
}

GWTreeSample ModelSampler::sample_tree(Rng& rng) const {
  if (trees_) return trees_->sample(rng);
  // u = 1: the block tree of a uniform quadrangulation.
  GWTreeSample out;
  const Quadrangulation q = sample_uniform_quadrangulation(config_.n, rng);
  out.tree = quad_skeleton(q, quad_block_labels(q)).tree;
  out.method = TreeMethod::UniformDirect;
  out.rng_digest = rng.digest();
  return out;
}

ModelSample ModelSampler::sample(Rng& rng) {
  ModelSample s;
  s.kind = config_.kind;
  s.method = config_.tree_method;
  if (!trees_) {
    const Quadrangulation q = sample_uniform_quadrangulation(config_.n, rng);
    auto d = block_decompose(q);
    s.tree = std::move(d.tree);
    if (s.kind == ObjectKind::Quad) {
      s.quad = q;
      s.quad_blocks = std::move(d.blocks);
    } else {
      s.map = tutte_inverse(q);
      s.map_blocks.reserve(d.blocks.size());
      for (const auto& b : d.blocks) s.map_blocks.push_back(tutte_inverse(b));
    }
    s.rng_digest = rng.digest();
    return s;
  }
  GWTreeSample t = trees_->sample(rng);
  s.tree = std::move(t.tree);
  s.approximate = t.approximate;
  s.tree_rejections = t.rejections;
  std::vector<std::int64_t> sizes;
  s.tree.decoration.assign(s.tree.node_count(), -1);
  for (std::size_t i = 0; i < s.tree.node_count(); ++i) {
    if (s.tree.outdegree[i] == 0) continue;
    s.tree.decoration[i] = static_cast<std::int32_t>(sizes.size());
    sizes.push_back(s.tree.outdegree[i] / 2);
  }
  const std::uint64_t before = harvester_.draws();
  auto blocks = harvester_.take(sizes, rng);
  s.block_draws = harvester_.draws() - before;
  s.correlated = config_.block_pool;
  for (auto& b : blocks) b = canonical(b);
  if (s.kind == ObjectKind::Quad) {
    s.quad = assemble(s.tree, blocks);
    s.quad_blocks = std::move(blocks);
  } else {
    s.map_blocks.reserve(blocks.size());
    for (const auto& b : blocks) s.map_blocks.push_back(tutte_inverse(b));
    s.map = assemble(s.tree, s.map_blocks);
  }
  s.rng_digest = rng.digest();
  return s;
}

ModelSample sample_model(const SamplerConfig& config) {
  Rng rng(config.seed);
  return sample_model(config, rng);
}

ModelSample sample_model(const SamplerConfig& config, Rng& rng) {
  ModelSampler sampler(config);
  return sampler.sample(rng);
}

}  // namespace blockmap
