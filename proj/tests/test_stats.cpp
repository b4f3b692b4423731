#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "blockmap/errors.hpp"
#include "blockmap/metrics.hpp"
#include "blockmap/model_sampler.hpp"
#include "blockmap/quadrangulation_sampler.hpp"
#include "blockmap/stats.hpp"
#include "blockmap/tutte.hpp"
#include "oracles.hpp"

using namespace blockmap;

namespace {

// Mean over edges of the distance from the root vertex to the closer endpoint.
double mean_edge_distance(const HalfEdgeMap& m) {
  int count = 0;
  const auto id = oracle::vertex_ids(m, count);
  const auto d = oracle::all_distances(m);
  const auto root = static_cast<std::size_t>(id[static_cast<std::size_t>(m.root())]);
  double sum = 0;
  for (std::size_t h = 0; h < m.half_edge_count(); ++h) {
    const auto a = static_cast<std::size_t>(id[h]);
    const auto b = static_cast<std::size_t>(id[static_cast<std::size_t>(m.alpha(static_cast<HalfEdge>(h)))]);
    sum += std::min(d[root][a], d[root][b]);
  }
  return sum / static_cast<double>(m.half_edge_count());
}

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("block tree statistics") {
    BlockTree t;
    t.outdegree = {4, 2, 0, 0, 0, 0, 0};
    CHECK(largest_blocks(t) == std::vector<std::int64_t>{2, 1, 0});
    CHECK(largest_blocks(t, 1) == std::vector<std::int64_t>{2});
    CHECK(tree_height(t) == 2);
    CHECK(mean_tree_depth(t) == doctest::Approx(8.0 / 7));
    CHECK(largest_blocks(leaf_tree()) == std::vector<std::int64_t>{0, 0, 0});
    CHECK(tree_height(leaf_tree()) == 0);
  }

  TEST_CASE("median") {
    CHECK(median({3, 1, 2}) == 2);
    CHECK(median({4, 1, 2, 3}) == 2.5);
    CHECK_THROWS_AS(median({}), InvalidArgument);
  }

  TEST_CASE("uniform maps have a giant block of a third") {
    SamplerConfig c;
    c.u = 1;
    c.n = 10000;
    c.kind = ObjectKind::Quad;
    c.tree_method = TreeMethod::UniformDirect;
    ModelSampler s(c);
    Rng rng(21);
    double sum = 0;
    for (int i = 0; i < 100; ++i) sum += static_cast<double>(largest_blocks(s.sample(rng).tree, 1)[0]);
    const double mean = sum / 100 / 10000;
    MESSAGE("mean LB1/n = " << mean);
    CHECK(mean >= 0.30);
    CHECK(mean <= 0.36);
  }

  TEST_CASE("distance samples are root distances") {
    Rng rng(22);
    for (auto d : distance_sample(HalfEdgeMap::edge_map(), rng, 100)) CHECK((d == 0 || d == 1));
    for (int i = 0; i < 50; ++i) {
      const HalfEdgeMap m = tutte_inverse(sample_uniform_quadrangulation(1 + static_cast<std::int64_t>(rng.below(40)), rng));
      int count = 0;
      const auto id = oracle::vertex_ids(m, count);
      const auto all = oracle::all_distances(m);
      const auto& row = all[static_cast<std::size_t>(id[static_cast<std::size_t>(m.root())])];
      for (auto d : distance_sample(m, rng, 20)) CHECK(std::find(row.begin(), row.end(), d) != row.end());
    }
  }

  TEST_CASE("exponent fits") {
    std::vector<std::pair<double, double>> exact;
    for (double n = 1024; n <= 131072; n *= 2) exact.emplace_back(n, 3 * std::sqrt(n));
    const auto f = exponent_fit(exact);
    CHECK(f.slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-9));
    CHECK(f.r2 == doctest::Approx(1.0));
    CHECK(f.points == exact.size());

    Rng rng(23);
    std::vector<std::pair<double, double>> noisy;
    for (double n = 4096; n <= 131072; n *= 2) noisy.emplace_back(n, std::pow(n, 2.0 / 3) * (1 + 0.04 * (rng.uniform() - 0.5)));
    CHECK(std::abs(exponent_fit(noisy).slope - 2.0 / 3) < 0.02);

    const std::vector<std::pair<double, double>> two{{1, 1}, {2, 2}};
    CHECK_THROWS_AS(exponent_fit(two), InvalidArgument);
    const std::vector<std::pair<double, double>> flat{{4, 1}, {4, 2}, {4, 3}};
    CHECK_THROWS_AS(exponent_fit(flat), InvalidArgument);
    const std::vector<std::pair<double, double>> zero{{1, 1}, {2, 0}, {4, 3}};
    CHECK_THROWS_AS(exponent_fit(zero), InvalidArgument);
  }

  TEST_CASE("block distances with fixed size") {
    const Quadrangulation a = tutte_angular(HalfEdgeMap::edge_map());
    const Quadrangulation b = tutte_angular(HalfEdgeMap::loop_map());
    const double d1 = (mean_edge_distance(a.map()) + mean_edge_distance(b.map())) / 2;
    CHECK(d1 == doctest::Approx(0.25));
    Rng rng(24);
    KappaOptions o;
    o.fixed_j = 1;
    const auto e = kappa_mc(5, 100000, rng, o);
    CHECK(e.tail_bias_bound == 0);
    CHECK(std::abs(e.mean - d1) < 4 * e.stderr_mean);
  }

  TEST_CASE("kappa estimates") {
    Rng r1(25), r2(26);
    const auto a = kappa_mc(5, 20000, r1);
    const auto b = kappa_mc(5, 20000, r2);
    MESSAGE("kappa(5) = " << a.mean << " +- " << a.stderr_mean);
    CHECK(a.mean > 0);
    CHECK(std::abs(a.mean - b.mean) < 4 * std::hypot(a.stderr_mean, b.stderr_mean));
    CHECK(std::isfinite(a.tail_bias_bound));
    CHECK(a.tail_bias_bound < 1e-6);

    KappaOptions map;
    map.kind = ObjectKind::Map;
    const auto m = kappa_mc(5, 5000, r1, map);
    CHECK(m.mean >= 0);
    CHECK(std::isfinite(m.mean));

    KappaOptions small;
    small.j_max = 64;
    CHECK(std::isinf(kappa_mc(1.8, 10, r1, small).tail_bias_bound));
    CHECK_THROWS_AS(kappa_mc(1.0, 10, r1), InvalidArgument);
    CHECK_THROWS_AS(kappa_mc(5, 0, r1), InvalidArgument);
  }
}
