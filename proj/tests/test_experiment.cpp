#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "blockmap/errors.hpp"
#include "blockmap/experiment.hpp"
#include "blockmap/hemap_io.hpp"

using namespace blockmap;

namespace {

ExperimentPlan small_plan() {
  ExperimentPlan p;
  p.u_grid = {1.0, 1.8, 5.0};
  p.n_grid = {16, 64, 256};
  p.replicas = 4;
  p.seed = 77;
  p.kind = ObjectKind::Quad;
  return p;
}

std::string run_csv(const ExperimentPlan& p) {
  std::ostringstream out;
  run_experiment(p, &out);
  return out.str();
}

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("columns start with the documented ones") {
    const std::vector<std::string> expected{"u",  "n",  "replica", "seed", "kind",   "method", "approx", "LB1",
                                            "LB2", "LB3", "b",       "height", "dist", "diam_lb", "ms"};
    const auto& cols = record_columns();
    REQUIRE(cols.size() >= expected.size());
    CHECK(std::vector<std::string>(cols.begin(), cols.begin() + static_cast<long>(expected.size())) == expected);
    CHECK(csv_header().rfind("u,n,replica,seed", 0) == 0);
  }

  TEST_CASE("output does not depend on the thread count") {
    auto p = small_plan();
    const std::string one = run_csv(p);
    p.threads = 3;
    CHECK(run_csv(p) == one);
    CHECK(std::count(one.begin(), one.end(), '\n') == 1 + 3 * 3 * 4);
  }

  TEST_CASE("rows can be regenerated from their seed") {
    const auto p = small_plan();
    const auto result = run_experiment(p);
    REQUIRE(result.records.size() == 36);
    for (const auto& r : result.records) {
      SamplerConfig c;
      c.u = r.u;
      c.n = r.n;
      c.kind = p.kind;
      c.tree_method = experiment_method(r.u, r.n);
      c.seed = r.seed;
      const auto x = sample_model(c);
      CHECK(largest_blocks(x.tree) == std::vector<std::int64_t>{r.LB1, r.LB2, r.LB3});
      CHECK(static_cast<std::int64_t>(x.tree.internal_count()) == r.b);
    }
    CHECK(replica_seed(77, 0, 0, 0) != replica_seed(77, 0, 0, 1));
    CHECK(replica_seed(77, 0, 1, 0) != replica_seed(77, 1, 0, 0));
  }

  TEST_CASE("sampler limits are recorded, not fatal") {
    ExperimentPlan p;
    p.u_grid = {5.0};
    p.n_grid = {4000};
    p.replicas = 2;
    p.max_rejections = 1;
    p.trees_only = true;
    const auto result = run_experiment(p);
    REQUIRE(result.records.size() == 2);
    for (const auto& r : result.records) CHECK_FALSE(r.error.empty());
    CHECK(result.summary.at(0).cells.at(0).errors == 2);
  }

  TEST_CASE("summaries") {
    auto p = small_plan();
    p.n_grid = {16, 32, 64, 128, 256};
    p.replicas = 3;
    const auto result = run_experiment(p);
    const auto j = nlohmann::json::parse(summary_json(result.summary));
    REQUIRE(j.is_array());
    CHECK(j.size() == 3);
    CHECK(j[1]["regime"] == "critical");
    CHECK(result.summary[0].fits.size() >= 1);
    for (const auto& f : result.summary[0].fits) CHECK(f.fit.points == 3);
  }

  TEST_CASE("plan validation") {
    ExperimentPlan p;
    CHECK_THROWS_AS(validate(p), InvalidArgument);
    p = small_plan();
    p.method = TreeMethod::ExactDP;
    p.n_grid = {1000};
    CHECK_THROWS_AS(validate(p), InvalidArgument);
    p = small_plan();
    p.replicas = 0;
    CHECK_THROWS_AS(validate(p), InvalidArgument);
  }
}
