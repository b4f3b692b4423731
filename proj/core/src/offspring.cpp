#include "blockmap/offspring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blockmap/errors.hpp"

namespace blockmap {

OffspringDistribution::OffspringDistribution(const PhaseParams& p, std::int64_t j_max, Bias bias)
    : params_(p), bias_(bias) {
  if (j_max < 1 || j_max > (std::int64_t{1} << 28)) throw InvalidArgument("j_max out of range");
  const auto size = static_cast<std::size_t>(j_max) + 1;
  mass_.resize(size);
  cdf_.resize(size);
  mass_[0] = bias_ == Bias::None ? 1 / p.M_rho : 0.0;
  const double m1 = 2 * p.y * p.u / p.M_rho;  // b_1 = 2
  mass_[1] = bias_ == Bias::None ? m1 : 2 * m1 / p.E;
  for (std::size_t j = 1; j + 1 < size; ++j) mass_[j + 1] = next_mass(mass_[j], static_cast<std::int64_t>(j));
  double acc = 0;
  for (std::size_t j = 0; j < size; ++j) {
    acc += mass_[j];
    cdf_[j] = acc;
  }
  // guide_[g] is the first j with cdf_[j] > g / G.
  const std::size_t g_count = size;
  guide_.resize(g_count);
  std::size_t j = 0;
  for (std::size_t g = 0; g < g_count; ++g) {
    const double level = static_cast<double>(g) / static_cast<double>(g_count);
    while (j + 1 < size && cdf_[j] <= level) ++j;
    guide_[g] = static_cast<std::int32_t>(j);
  }
}

double OffspringDistribution::next_mass(double m, std::int64_t j) const {
  double r = blocks_ratio(j) * params_.y * m;
  if (bias_ == Bias::SizeBiased) r *= static_cast<double>(j + 1) / static_cast<double>(j);
  return r;
}

double OffspringDistribution::mass(std::int64_t j) const {
  if (j < 0) return 0;
  if (j <= j_max()) return mass_[static_cast<std::size_t>(j)];
  return bias_ == Bias::None ? offspring_mass(params_, j) : size_biased_mass(params_, j);
}

std::int64_t OffspringDistribution::sample_half(Rng& rng) const {
  return sample_half_bounded(rng, std::int64_t{1} << 50);
}

std::int64_t OffspringDistribution::sample_half_bounded(Rng& rng, std::int64_t limit) const {
  const double u = rng.uniform();
  if (u < cdf_.back()) {
    auto j = static_cast<std::size_t>(guide_[static_cast<std::size_t>(u * static_cast<double>(guide_.size()))]);
    while (cdf_[j] <= u) ++j;
    const auto out = static_cast<std::int64_t>(j);
    return out > limit ? -1 : out;
  }
  // Tail walk; the tabulated masses cover all but a tiny fraction of draws.
  double acc = cdf_.back();
  double m = mass_.back();
  std::int64_t j = j_max();
  while (true) {
    m = next_mass(m, j);
    ++j;
    if (j > limit) return -1;
    acc += m;
    if (u < acc || m == 0) return j;
  }
}

OffspringDistribution::Summary OffspringDistribution::summarize(std::int64_t cutoff) const {
  Summary s;
  s.cutoff = std::max(cutoff, j_max());
  double m = 0;
  for (std::int64_t j = 0; j <= s.cutoff; ++j) {
    m = j <= j_max() ? mass_[static_cast<std::size_t>(j)] : next_mass(m, j - 1);
    s.mass += m;
    s.mean += 2 * static_cast<double>(j) * m;
  }
  // b_j (4/27)^j j^{5/2} decreases in j, so for j > L the masses are at most
  // m_L (L/j)^{5/2} w^{L-j} (times j/L when size-biased).
  const auto L = static_cast<double>(s.cutoff);
  if (bias_ == Bias::None) {
    s.mass_tail_bound = m * L * (2.0 / 3.0);
    // sum_{j>L} 2j m_L (L/j)^{5/2} w^{L-j}, using the midpoint rule for the power.
    const double lw = std::log(params_.w);
    double tail_sum = 2 / std::sqrt(L + 0.5);
    if (lw > 0) {
      // sum_{j>L} j^{-3/2} w^{L-j} <= (L+1)^{-3/2} / (1 - 1/w); take the smaller.
      tail_sum = std::min(tail_sum, std::pow(L + 1, -1.5) / (1 - 1 / params_.w));
    }
    s.mean_tail = 2 * m * std::pow(L, 2.5) * tail_sum;
  } else {
    s.mass_tail_bound = 2 * m * L;
    s.mean_tail = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

}  // namespace blockmap
