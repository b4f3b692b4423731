#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "blockmap/decomposition.hpp"
#include "blockmap/offspring.hpp"
#include "blockmap/rng.hpp"

namespace blockmap {

enum class TreeMethod {
  RejectionCycle,  // exact; u >= 9/5
  ExactDP,         // exact; n <= 512
  JansonApprox,    // approximate; u < 9/5
  UniformDirect,   // exact; u = 1 only, via a uniform quadrangulation (model sampler only)
};

const char* to_string(TreeMethod m);
/// Accepts "rejection", "exact-dp", "janson", "uniform" and the enum spellings. Throws InvalidArgument.
TreeMethod parse_tree_method(const std::string& s);
/// Largest n accepted by ExactDP.
inline constexpr std::int64_t kExactDPMaxN = 512;
/// The exact method when one is practical, JansonApprox otherwise.
TreeMethod default_tree_method(double u, std::int64_t n);

struct GWTreeSample {
  BlockTree tree;  // undecorated
  std::uint64_t rejections = 0;
  TreeMethod method = TreeMethod::RejectionCycle;
  bool approximate = false;
  std::uint64_t rng_digest = 0;
};

/// Rotates a degree sequence with sum(d) = size - 1 into the unique cyclic shift that is
/// a Lukasiewicz word and returns the corresponding tree.
BlockTree cycle_lemma_tree(const std::vector<std::int32_t>& degrees);

/// Galton-Watson tree with offspring law mu^u conditioned on 2n edges.
///
/// Construction is separate from sampling so that the ExactDP tables are built once.
class TreeSampler {
 public:
  /// Throws InvalidArgument if the method does not apply to (u, n), see TreeMethod.
  TreeSampler(std::shared_ptr<const OffspringDistribution> dist, std::int64_t n, TreeMethod method,
              std::uint64_t max_rejections = 100'000'000);

  /// Throws RejectionLimitExceeded after `max_rejections` failed attempts.
  GWTreeSample sample(Rng& rng) const;

  std::int64_t n() const { return n_; }
  TreeMethod method() const { return method_; }
  const OffspringDistribution& distribution() const { return *dist_; }

 private:
  std::vector<std::int32_t> degrees_rejection(Rng& rng, std::uint64_t& rejections) const;
  std::vector<std::int32_t> degrees_exact_dp(Rng& rng) const;
  std::vector<std::int32_t> degrees_janson(Rng& rng, std::uint64_t& rejections) const;

  std::shared_ptr<const OffspringDistribution> dist_;
  std::int64_t n_;
  TreeMethod method_;
  std::uint64_t max_rejections_;
  // ExactDP: row m holds P(sum of m half-degrees = s) for s = 0..n, normalised per row.
  std::vector<std::vector<double>> partial_;
  std::vector<double> log_scale_;
};

}  // namespace blockmap
