#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "blockmap/decomposition.hpp"
#include "blockmap/errors.hpp"
#include "blockmap/gw_tree.hpp"
#include "blockmap/hemap_io.hpp"
#include "blockmap/model_sampler.hpp"
#include "blockmap/phase.hpp"
#include "blockmap/quadrangulation_sampler.hpp"
#include "blockmap/series.hpp"
#include "blockmap/stats.hpp"
#include "blockmap/tutte.hpp"

namespace blockmap::cli {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Check check(std::string name, std::string tolerance, std::string observed, bool pass) {
  return {std::move(name), std::move(tolerance), std::move(observed), pass};
}

std::vector<Check> series_checks(const VerifyOptions& o) {
  std::vector<Check> out;
  constexpr int N = 60;
  const auto table = solve_bivariate(N);
  int bad_sum = 0, bad_blocks = 0;
  for (int n = 0; n <= N; ++n) {
    mpz_class sum = 0;
    for (const auto& x : table.row(n)) sum += x;
    mpz_class m = maps_count(static_cast<unsigned>(n));
    mpz_class b = blocks_count(static_cast<unsigned>(n));
    if (o.mutate == "maps_count") m += 1;
    if (o.mutate == "blocks_count") b += n;
    if (sum != m) ++bad_sum;
    if (n >= 1 && table(n, 1) != b) ++bad_blocks;
  }
  out.push_back(check("series: sum_b N(n,b) = m_n, n <= 60", "exact", std::to_string(bad_sum) + " mismatches", bad_sum == 0));
  out.push_back(check("series: N(n,1) = b_n, n <= 60", "exact", std::to_string(bad_blocks) + " mismatches", bad_blocks == 0));
  const bool same = solve_bivariate_fixed_point(8) == solve_bivariate(8);
  out.push_back(check("series: Lagrange table = fixed-point table, n <= 8", "exact", same ? "equal" : "different", same));
  return out;
}

std::vector<Check> phase_checks() {
  std::vector<Check> out;
  const mpq_class e1 = exact_mean_subcritical(mpq_class(1));
  out.push_back(check("phase: E(1) = 2/3", "exact", e1.get_str(), e1 == mpq_class(2, 3)));
  double worst = 0;
  for (double u : {1.8, 2.0, 2.5, 5.0}) worst = std::max(worst, std::abs(params(u).E - 1));
  out.push_back(check("phase: E(u) = 1 for u >= 9/5", "1e-10", fmt(worst), worst <= 1e-10));
  worst = 0;
  for (double u = 1.81; u <= 50; u += 0.37) {
    const auto p = params(u);
    worst = std::max(worst, std::abs(p.sigma2 - p.sigma2_closed) / p.sigma2_closed);
  }
  out.push_back(check("phase: two variance formulas agree on (1.81, 50]", "1e-8", fmt(worst), worst <= 1e-8));
  const double dy = std::abs(y_of_u(9.0 / 5.0) - 4.0 / 27.0);
  out.push_back(check("phase: y(9/5) = 4/27", "1e-12", fmt(dy), dy <= 1e-12));
  int bad = 0;
  for (const auto& row : schema_table())
    if (row.mean(row.u_c) != 1) ++bad;
  out.push_back(check("phase: schema rows critical at u_C", "exact", std::to_string(bad) + " rows off", bad == 0));
  return out;
}

std::vector<Check> bijection_checks(Rng& rng) {
  std::vector<Check> out;
  int bad = 0;
  for (int i = 0; i < 300; ++i) {
    const auto n = static_cast<std::int64_t>(1 + rng.below(200));
    const Quadrangulation q = sample_uniform_quadrangulation(n, rng);
    const HalfEdgeMap m = tutte_inverse(q);
    if (!same_rooted_map(tutte_angular(m).map(), q.map())) ++bad;
    const auto dm = block_decompose(m);
    const auto dq = block_decompose(q);
    if (!same_rooted_map(assemble(dm.tree, dm.blocks), m)) ++bad;
    if (!same_rooted_map(assemble(dq.tree, dq.blocks).map(), q.map())) ++bad;
    if (dm.tree != dq.tree) ++bad;
    if (to_hemap(parse_hemap(to_hemap(q)).quad.value()) != to_hemap(q)) ++bad;
  }
  out.push_back(check("mapcore: bijection, decomposition and HEMAP round trips on 300 objects", "exact",
                      std::to_string(bad) + " failures", bad == 0));
  return out;
}

std::vector<Check> sampler_checks(const VerifyOptions& o, Rng& rng) {
  std::vector<Check> out;
  // Offspring frequency of 0 at u = 1 is 3/4.
  {
    const OffspringDistribution d(1.0);
    const int draws = 200000;
    int zeros = 0;
    for (int i = 0; i < draws; ++i) zeros += d.sample_half(rng) == 0;
    double f = zeros / static_cast<double>(draws);
    if (o.mutate == "offspring") f += 0.05;
    out.push_back(check("sampler: mu^1(0) = 3/4", "0.005", fmt(std::abs(f - 0.75)), std::abs(f - 0.75) <= 0.005));
  }
  const auto table = solve_bivariate(8);
  struct Cell {
    int n;
    mpq_class u;
  };
  for (const Cell& c : {Cell{2, 1}, Cell{3, 2}, Cell{4, mpq_class(9, 5)}}) {
    SamplerConfig cfg;
    cfg.u = c.u.get_d();
    cfg.n = c.n;
    cfg.tree_method = default_tree_method(cfg.u, cfg.n);
    ModelSampler sampler(cfg);
    const int draws = 100000;
    std::map<std::int64_t, int> root, count;
    for (int i = 0; i < draws; ++i) {
      const auto s = sampler.sample(rng);
      const auto d = block_decompose(s.map);
      ++root[d.tree.outdegree[0] / 2];
      ++count[static_cast<std::int64_t>(d.tree.internal_count())];
    }
    auto deviation = [&](const ExactLaw& law, std::map<std::int64_t, int>& freq) {
      double worst = 0;
      for (std::size_t i = 0; i < law.support.size(); ++i)
        worst = std::max(worst, std::abs(freq[law.support[i]] / static_cast<double>(draws) - law.probability[i].get_d()));
      return worst;
    };
    const double dr = deviation(root_block_law(table, c.n, c.u), root);
    const double db = deviation(block_number_law(table, c.n, c.u), count);
    const std::string cell = "(n=" + std::to_string(c.n) + ", u=" + c.u.get_str() + ")";
    out.push_back(check("sampler: root block law " + cell, "0.01", fmt(dr), dr < 0.01));
    out.push_back(check("sampler: block count law " + cell, "0.01", fmt(db), db < 0.01));
  }
  {
    SamplerConfig cfg;
    cfg.u = 5;
    cfg.n = 500;
    cfg.kind = ObjectKind::Quad;
    cfg.seed = o.seed;
    const bool same = to_hemap(sample_model(cfg).quad) == to_hemap(sample_model(cfg).quad);
    out.push_back(check("sampler: same seed gives the same object", "exact", same ? "identical" : "different", same));
  }
  return out;
}

}  // namespace

std::vector<Check> run_verify(const VerifyOptions& options) {
  if (!options.mutate.empty() && options.mutate != "blocks_count" && options.mutate != "maps_count" &&
      options.mutate != "offspring")
    throw InvalidArgument("unknown mutation '" + options.mutate + "'");
  Rng rng(options.seed);
  std::vector<Check> out;
  for (auto part : {series_checks(options), phase_checks(), bijection_checks(rng), sampler_checks(options, rng)})
    out.insert(out.end(), part.begin(), part.end());
  return out;
}

}  // namespace blockmap::cli
