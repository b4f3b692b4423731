#include <doctest.h>

#include <set>
#include <vector>

#include "blockmap/rng.hpp"
#include "oracles.hpp"

using namespace blockmap;

TEST_SUITE("rng") {
  TEST_CASE("same seed, same stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
    CHECK(a.digest() == b.digest());
  }

  TEST_CASE("derived streams differ") {
    std::set<std::uint64_t> first;
    for (std::uint64_t s = 0; s < 100; ++s) first.insert(Rng::derive(7, s).next());
    for (std::uint64_t s = 0; s < 100; ++s) first.insert(Rng::derive(7, 3, s).next());
    CHECK(first.size() == 200);
  }

  TEST_CASE("below is uniform") {
    Rng r(1);
    const std::uint64_t k = 7;
    std::vector<long> counts(k, 0);
    const long draws = 700000;
    for (long i = 0; i < draws; ++i) {
      const auto x = r.below(k);
      REQUIRE(x < k);
      ++counts[x];
    }
    double stat = 0;
    const double expect = static_cast<double>(draws) / k;
    for (long c : counts) stat += (c - expect) * (c - expect) / expect;
    CHECK(oracle::chi_square_sf(stat, k - 1) > 0.001);
  }

  TEST_CASE("uniform lies in [0, 1)") {
    Rng r(2);
    double sum = 0;
    for (int i = 0; i < 100000; ++i) {
      const double x = r.uniform();
      REQUIRE(x >= 0);
      REQUIRE(x < 1);
      sum += x;
    }
    CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
  }
}
