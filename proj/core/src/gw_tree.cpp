#include "blockmap/gw_tree.hpp"

#include <algorithm>
#include <cmath>

#include "blockmap/errors.hpp"

namespace blockmap {

const char* to_string(TreeMethod m) {
  switch (m) {
    case TreeMethod::RejectionCycle: return "rejection";
    case TreeMethod::ExactDP: return "exact-dp";
    case TreeMethod::JansonApprox: return "janson";
    case TreeMethod::UniformDirect: return "uniform";
  }
  return "?";
}

TreeMethod parse_tree_method(const std::string& s) {
  if (s == "rejection" || s == "RejectionCycle") return TreeMethod::RejectionCycle;
  if (s == "exact-dp" || s == "ExactDP") return TreeMethod::ExactDP;
  if (s == "janson" || s == "JansonApprox") return TreeMethod::JansonApprox;
  if (s == "uniform" || s == "UniformDirect") return TreeMethod::UniformDirect;
  throw InvalidArgument("unknown tree method '" + s + "'");
}

TreeMethod default_tree_method(double u, std::int64_t n) {
  if (u >= kCriticalU) return TreeMethod::RejectionCycle;
  if (n <= kExactDPMaxN) return TreeMethod::ExactDP;
  return TreeMethod::JansonApprox;
}

BlockTree cycle_lemma_tree(const std::vector<std::int32_t>& degrees) {
  const std::size_t size = degrees.size();
  if (size == 0) throw InvalidArgument("empty degree sequence");
  std::int64_t sum = 0, best = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < size; ++i) {
    sum += degrees[i] - 1;
    if (sum < best) {
      best = sum;
      start = i + 1;
    }
  }
  if (sum != -1) throw InvalidArgument("degrees must sum to the node count minus one");
  BlockTree t;
  t.outdegree.resize(size);
  for (std::size_t i = 0; i < size; ++i) t.outdegree[i] = degrees[(start + i) % size];
  return t;
}

TreeSampler::TreeSampler(std::shared_ptr<const OffspringDistribution> dist, std::int64_t n, TreeMethod method,
                         std::uint64_t max_rejections)
    : dist_(std::move(dist)), n_(n), method_(method), max_rejections_(max_rejections) {
  if (!dist_) throw InvalidArgument("missing offspring distribution");
  if (dist_->bias() != OffspringDistribution::Bias::None) throw InvalidArgument("tree sampling needs the unbiased law");
  if (n_ < 0 || n_ > (std::int64_t{1} << 29)) throw InvalidArgument("n out of range");
  const double u = dist_->params().u;
  switch (method_) {
    case TreeMethod::RejectionCycle:
      if (u < kCriticalU) throw InvalidArgument("rejection sampling requires u >= 9/5 (acceptance decays exponentially below)");
      break;
    case TreeMethod::JansonApprox:
      if (u >= kCriticalU) throw InvalidArgument("the approximate tree sampler requires u < 9/5");
      break;
    case TreeMethod::UniformDirect:
      throw InvalidArgument("uniform direct sampling produces whole objects; use the model sampler");
    case TreeMethod::ExactDP: {
      if (n_ > kExactDPMaxN) throw InvalidArgument("ExactDP is limited to n <= 512");
      const auto rows = static_cast<std::size_t>(2 * n_ + 1);
      const auto cols = static_cast<std::size_t>(n_ + 1);
      partial_.assign(rows + 1, std::vector<double>(cols, 0.0));
      log_scale_.assign(rows + 1, 0.0);
      partial_[0][0] = 1;
      for (std::size_t m = 1; m <= rows; ++m) {
        auto& row = partial_[m];
        const auto& prev = partial_[m - 1];
        for (std::size_t s = 0; s < cols; ++s) {
          double acc = 0;
          for (std::size_t k = 0; k <= s; ++k) acc += dist_->mass(static_cast<std::int64_t>(k)) * prev[s - k];
          row[s] = acc;
        }
        const double top = *std::max_element(row.begin(), row.end());
        if (!(top > 0)) throw Error("ExactDP table underflow");
        for (double& v : row) v /= top;
        log_scale_[m] = log_scale_[m - 1] + std::log(top);
      }
      if (!(partial_[rows][cols - 1] > 0)) throw Error("ExactDP: conditioning event has probability zero");
      break;
    }
  }
}

std::vector<std::int32_t> TreeSampler::degrees_rejection(Rng& rng, std::uint64_t& rejections) const {
  const auto count = static_cast<std::size_t>(2 * n_ + 1);
  std::vector<std::int32_t> deg(count);
  // The last degree is forced to the remaining budget and accepted with
  // probability mass(left) / max mass, which keeps the law exact.
  double top = 0;
  for (std::int64_t j = 0; j <= std::min<std::int64_t>(n_, dist_->j_max()); ++j) top = std::max(top, dist_->mass(j));
  while (true) {
    std::int64_t left = n_;  // half-units still available
    std::size_t i = 0;
    for (; i + 1 < count; ++i) {
      const std::int64_t j = dist_->sample_half_bounded(rng, left);
      if (j < 0) break;
      deg[i] = static_cast<std::int32_t>(2 * j);
      left -= j;
    }
    if (i + 1 == count && rng.uniform() * top < dist_->mass(left)) {
      deg[i] = static_cast<std::int32_t>(2 * left);
      return deg;
    }
    if (++rejections >= max_rejections_) throw RejectionLimitExceeded("rejection limit reached for conditioned tree");
  }
}

std::vector<std::int32_t> TreeSampler::degrees_exact_dp(Rng& rng) const {
  const auto count = static_cast<std::size_t>(2 * n_ + 1);
  std::vector<std::int32_t> deg(count);
  std::int64_t left = n_;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& rest = partial_[count - i - 1];
    // P(J = k | remaining sum) is proportional to mass(k) * rest[left - k]; the row
    // normalisation of `rest` cancels.
    double total = 0;
    for (std::int64_t k = 0; k <= left; ++k) total += dist_->mass(k) * rest[static_cast<std::size_t>(left - k)];
    double target = rng.uniform() * total;
    std::int64_t k = 0;
    for (; k < left; ++k) {
      target -= dist_->mass(k) * rest[static_cast<std::size_t>(left - k)];
      if (target < 0) break;
    }
    // Guard against rounding: never pick a value with zero conditional weight.
    while (k > 0 && dist_->mass(k) * rest[static_cast<std::size_t>(left - k)] == 0) --k;
    deg[i] = static_cast<std::int32_t>(2 * k);
    left -= k;
  }
  return deg;
}

std::vector<std::int32_t> TreeSampler::degrees_janson(Rng& rng, std::uint64_t& rejections) const {
  const auto count = static_cast<std::size_t>(2 * n_ + 1);
  std::vector<std::int32_t> deg(count);
  while (true) {
    std::int64_t left = n_;
    std::size_t i = 1;
    for (; i < count; ++i) {
      const std::int64_t j = dist_->sample_half_bounded(rng, left);
      if (j < 0) break;
      deg[i] = static_cast<std::int32_t>(2 * j);
      left -= j;
    }
    if (i == count) {
      deg[0] = static_cast<std::int32_t>(2 * left);
      break;
    }
    if (++rejections >= max_rejections_) throw RejectionLimitExceeded("negative special degree too often");
  }
  for (std::size_t k = count - 1; k > 0; --k) std::swap(deg[k], deg[static_cast<std::size_t>(rng.below(k + 1))]);
  return deg;
}

GWTreeSample TreeSampler::sample(Rng& rng) const {
  GWTreeSample out;
  out.method = method_;
  std::vector<std::int32_t> deg;
  switch (method_) {
    case TreeMethod::RejectionCycle: deg = degrees_rejection(rng, out.rejections); break;
    case TreeMethod::ExactDP: deg = degrees_exact_dp(rng); break;
    case TreeMethod::JansonApprox:
      deg = degrees_janson(rng, out.rejections);
      out.approximate = true;
      break;
    case TreeMethod::UniformDirect: throw InvalidArgument("unsupported");
  }
  out.tree = cycle_lemma_tree(deg);
  out.rng_digest = rng.digest();
  return out;
}

}  // namespace blockmap
