#pragma once

#include <array>
#include <cstdint>

namespace blockmap {

/// xoshiro256** seeded through SplitMix64.
///
/// All draws used by the library go through the member functions below, so
/// results depend only on the seed and never on the standard library's
/// distribution implementations.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0);

  /// Independent stream for task `stream` of a run seeded with `seed`.
  static Rng derive(std::uint64_t seed, std::uint64_t stream);
  static Rng derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream);

  std::uint64_t next();
  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound);
  bool coin();

  /// Cheap fingerprint of the current state, for provenance metadata.
  std::uint64_t digest() const;

 private:
  std::array<std::uint64_t, 4> s_{};
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace blockmap
