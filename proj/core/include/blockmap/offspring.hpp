#pragma once

#include <cstdint>
#include <vector>

#include "blockmap/phase.hpp"
#include "blockmap/rng.hpp"

namespace blockmap {

/// The law mu^u on even integers 2j, or its size-biased version 2j mu^u(2j) / E(u).
///
/// Masses up to j_max are tabulated with the exact ratio b_{j+1}/b_j; draws use
/// inversion through a guide table, and beyond j_max walk the tail with the same
/// recurrence.
class OffspringDistribution {
 public:
  enum class Bias { None, SizeBiased };

  explicit OffspringDistribution(const PhaseParams& p, std::int64_t j_max = std::int64_t{1} << 16,
                                 Bias bias = Bias::None);
  explicit OffspringDistribution(double u, std::int64_t j_max = std::int64_t{1} << 16, Bias bias = Bias::None)
      : OffspringDistribution(::blockmap::params(u), j_max, bias) {}

  const PhaseParams& params() const { return params_; }
  Bias bias() const { return bias_; }
  std::int64_t j_max() const { return static_cast<std::int64_t>(mass_.size()) - 1; }

  /// Probability of outdegree 2j (computed on demand beyond j_max).
  double mass(std::int64_t j) const;
  /// Sum of tabulated masses, j <= j_max.
  double prefix_mass() const { return cdf_.back(); }

  /// Half outdegree j of a draw (the outdegree is 2j).
  std::int64_t sample_half(Rng& rng) const;
  std::int64_t sample(Rng& rng) const { return 2 * sample_half(rng); }
  /// Like sample_half, but returns -1 as soon as the draw is known to exceed `limit`.
  std::int64_t sample_half_bounded(Rng& rng, std::int64_t limit) const;

  struct Summary {
    std::int64_t cutoff = 0;
    double mass = 0;           // sum of masses for j <= cutoff
    double mass_tail_bound = 0;  // upper bound on the remaining mass
    double mean = 0;           // sum of 2j * mass for j <= cutoff
    double mean_tail = 0;      // estimate of the remaining part of the mean
  };
  /// Sums masses and first moment up to `cutoff` (at least j_max), with a rigorous
  /// bound on the remaining mass and an asymptotic estimate of the remaining mean.
  Summary summarize(std::int64_t cutoff) const;

 private:
  double next_mass(double m, std::int64_t j) const;  // mass(j + 1) from mass(j), j >= 1

  PhaseParams params_;
  Bias bias_;
  std::vector<double> mass_;
  std::vector<double> cdf_;
  std::vector<std::int32_t> guide_;
};

}  // namespace blockmap
