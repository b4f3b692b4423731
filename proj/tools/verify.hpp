#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace blockmap::cli {

struct Check {
  std::string name;
  std::string tolerance;
  std::string observed;
  bool pass = false;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  /// Deliberately corrupts one ingredient, to show the checks catch it:
  /// "blocks_count", "maps_count" or "offspring".
  std::string mutate;
};

/// Reduced-scale versions of the acceptance checks.
std::vector<Check> run_verify(const VerifyOptions& options);

}  // namespace blockmap::cli
