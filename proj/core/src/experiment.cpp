#include "blockmap/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "blockmap/errors.hpp"
#include "blockmap/metrics.hpp"
#include "blockmap/phase.hpp"

namespace blockmap {

namespace {

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

}  // namespace

TreeMethod experiment_method(double u, std::int64_t n) {
  return u == 1 ? TreeMethod::UniformDirect : default_tree_method(u, n);
}

void validate(const ExperimentPlan& plan) {
  if (plan.u_grid.empty() || plan.n_grid.empty()) throw InvalidArgument("experiment needs at least one u and one n");
  if (plan.replicas < 1) throw InvalidArgument("replicas must be positive");
  if (plan.threads < 1) throw InvalidArgument("threads must be positive");
  for (double u : plan.u_grid) {
    if (!(u > 0) || !std::isfinite(u)) throw InvalidArgument("u must be positive");
    for (auto n : plan.n_grid) {
      if (n < 1) throw InvalidArgument("n must be at least 1");
      SamplerConfig c;
      c.u = u;
      c.n = n;
      c.tree_method = plan.method.value_or(experiment_method(u, n));
      c.j_max = plan.j_max;
      // Constructing the sampler runs the method checks.
      (void)ModelSampler(c);
    }
  }
}

std::uint64_t replica_seed(std::uint64_t base, std::size_t u_index, std::size_t n_index, std::int64_t replica) {
  return Rng::derive(base, (static_cast<std::uint64_t>(u_index) << 32) | n_index, static_cast<std::uint64_t>(replica))
      .next();
}

SampleRecord run_replica(const ModelSampler& sampler, const ExperimentPlan& plan, std::uint64_t seed,
                         std::int64_t replica) {
  const auto& c = sampler.config();
  SampleRecord r;
  r.u = c.u;
  r.n = c.n;
  r.replica = replica;
  r.seed = seed;
  r.kind = c.kind;
  r.method = c.tree_method;
  r.approx = c.tree_method == TreeMethod::JansonApprox;
  const auto start = std::chrono::steady_clock::now();
  try {
    Rng rng(seed);
    BlockTree tree;
    if (plan.trees_only) {
      tree = sampler.sample_tree(rng).tree;
    } else {
      ModelSampler local = sampler;
      ModelSample s = local.sample(rng);
      const HalfEdgeMap& m = s.kind == ObjectKind::Map ? s.map : s.quad.map();
      const VertexGraph g = vertex_graph(m);
      const auto dist = bfs_distances(g, g.vertex_of[static_cast<std::size_t>(m.root())]);
      std::vector<double> picks(plan.distance_reps);
      for (auto& d : picks) d = dist[rng.below(dist.size())];
      r.dist = picks.empty() ? -1 : median(picks);
      r.diam_lb = diameter(g, DiameterMode::TwoSweepLowerBound);
      tree = std::move(s.tree);
    }
    const auto lb = largest_blocks(tree, 3);
    r.LB1 = lb[0];
    r.LB2 = lb[1];
    r.LB3 = lb[2];
    r.b = static_cast<std::int64_t>(tree.internal_count());
    r.height = tree_height(tree);
    r.mean_depth = mean_tree_depth(tree);
  } catch (const Error& e) {
    r.error = e.what();
  }
  if (plan.record_time)
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> cols = {"u",  "n",      "replica", "seed", "kind",    "method",
                                                "approx", "LB1", "LB2",   "LB3",  "b",       "height",
                                                "dist", "diam_lb", "ms",  "mean_depth", "error"};
  return cols;
}

std::string csv_header() {
  std::string s;
  for (const auto& c : record_columns()) s += (s.empty() ? "" : ",") + c;
  return s + "\n";
}

std::string csv_row(const SampleRecord& r) {
  std::ostringstream o;
  o << format_double(r.u) << ',' << r.n << ',' << r.replica << ',' << r.seed << ',' << to_string(r.kind) << ','
    << to_string(r.method) << ',' << (r.approx ? "true" : "false") << ',' << r.LB1 << ',' << r.LB2 << ',' << r.LB3
    << ',' << r.b << ',' << r.height << ',' << format_double(r.dist) << ',' << r.diam_lb << ','
    << format_double(std::round(r.ms * 1000) / 1000) << ',' << format_double(r.mean_depth) << ',';
  // Messages never contain quotes; commas are the only hazard.
  std::string err = r.error;
  for (auto& ch : err)
    if (ch == ',' || ch == '\n') ch = ';';
  o << err << '\n';
  return o.str();
}

ExperimentResult run_experiment(const ExperimentPlan& plan, std::ostream* csv,
                                const std::function<void(std::size_t, std::size_t)>& progress) {
  validate(plan);
  struct Task {
    std::size_t cell;
    std::uint64_t seed;
    std::int64_t replica;
  };
  std::vector<ModelSampler> cells;
  std::vector<Task> tasks;
  for (std::size_t ui = 0; ui < plan.u_grid.size(); ++ui) {
    for (std::size_t ni = 0; ni < plan.n_grid.size(); ++ni) {
      SamplerConfig c;
      c.u = plan.u_grid[ui];
      c.n = plan.n_grid[ni];
      c.kind = plan.kind;
      c.tree_method = plan.method.value_or(experiment_method(c.u, c.n));
      c.j_max = plan.j_max;
      c.max_rejections = plan.max_rejections;
      cells.emplace_back(c);
      for (std::int64_t r = 0; r < plan.replicas; ++r)
        tasks.push_back({cells.size() - 1, replica_seed(plan.seed, ui, ni, r), r});
    }
  }

  ExperimentResult result;
  result.records.resize(tasks.size());
  std::vector<char> done(tasks.size(), 0);
  std::size_t next_to_write = 0, finished = 0;
  std::mutex mu;
  if (csv) *csv << csv_header() << std::flush;

  std::atomic<std::size_t> next_task{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next_task.fetch_add(1);
      if (i >= tasks.size()) return;
      SampleRecord rec = run_replica(cells[tasks[i].cell], plan, tasks[i].seed, tasks[i].replica);
      std::lock_guard lock(mu);
      result.records[i] = std::move(rec);
      done[i] = 1;
      ++finished;
      while (next_to_write < tasks.size() && done[next_to_write]) {
        if (csv) *csv << csv_row(result.records[next_to_write]);
        ++next_to_write;
      }
      if (csv) csv->flush();
      if (progress) progress(finished, tasks.size());
    }
  };
  const unsigned threads = std::min<unsigned>(plan.threads, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (csv && !*csv) throw Error("failed writing experiment rows");
  result.summary = summarize(plan, result.records);
  return result;
}

std::vector<USummary> summarize(const ExperimentPlan& plan, const std::vector<SampleRecord>& records) {
  std::vector<USummary> out;
  for (double u : plan.u_grid) {
    USummary us;
    us.u = u;
    us.regime = to_string(regime_of(u));
    const PhaseParams p = params(u);
    std::vector<std::int64_t> ns = plan.n_grid;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    for (auto n : ns) {
      CellSummary c;
      c.u = u;
      c.n = n;
      std::vector<double> lb1, lb2, lb3, b, height, depth, dist;
      std::int64_t close = 0;
      const auto pred = predicted_largest_block(u, static_cast<double>(n));
      c.predicted_LB1 = pred.center;
      for (const auto& r : records) {
        if (r.u != u || r.n != n) continue;
        ++c.replicas;
        c.approx = c.approx || r.approx;
        if (!r.error.empty()) {
          ++c.errors;
          continue;
        }
        lb1.push_back(static_cast<double>(r.LB1));
        lb2.push_back(static_cast<double>(r.LB2));
        lb3.push_back(static_cast<double>(r.LB3));
        b.push_back(static_cast<double>(r.b));
        height.push_back(r.height);
        depth.push_back(r.mean_depth);
        if (r.dist >= 0) dist.push_back(r.dist);
        if (std::abs(static_cast<double>(r.LB1) - pred.center) <= 4) ++close;
      }
      c.mean_LB1 = mean_of(lb1);
      c.mean_LB2 = mean_of(lb2);
      c.mean_LB3 = mean_of(lb3);
      c.median_LB1 = lb1.empty() ? std::numeric_limits<double>::quiet_NaN() : median(lb1);
      c.mean_b = mean_of(b);
      c.mean_height = mean_of(height);
      c.mean_depth = mean_of(depth);
      c.rescaled_depth = p.regime == Regime::Supercritical && !p.near_critical
                             ? p.sigma * c.mean_depth / std::sqrt(4.0 * static_cast<double>(n))
                             : std::numeric_limits<double>::quiet_NaN();
      c.median_dist = dist.empty() ? -1 : median(dist);
      const double ok = static_cast<double>(lb1.size());
      if (p.regime == Regime::Subcritical && !p.near_critical) {
        c.deviation = c.mean_LB1 / static_cast<double>(n) - (1 - p.E);
        c.within_4 = std::numeric_limits<double>::quiet_NaN();
      } else if (p.regime == Regime::Supercritical && !p.near_critical) {
        c.deviation = c.mean_LB1 - pred.center;
        c.within_4 = ok > 0 ? static_cast<double>(close) / ok : std::numeric_limits<double>::quiet_NaN();
      } else {
        c.deviation = std::numeric_limits<double>::quiet_NaN();
        c.within_4 = std::numeric_limits<double>::quiet_NaN();
      }
      us.cells.push_back(c);
    }
    // The two smallest sizes carry the largest finite-size corrections.
    auto fit = [&](const std::string& name, auto get) {
      std::vector<std::pair<double, double>> pts;
      for (std::size_t i = 2; i < us.cells.size(); ++i) {
        const double v = get(us.cells[i]);
        if (!(v > 0)) return;
        pts.emplace_back(static_cast<double>(us.cells[i].n), v);
      }
      if (pts.size() < 3) return;
      us.fits.push_back({name, exponent_fit(pts)});
    };
    fit("LB1", [](const CellSummary& c) { return c.mean_LB1; });
    fit("LB2", [](const CellSummary& c) { return c.mean_LB2; });
    fit("height", [](const CellSummary& c) { return c.mean_height; });
    fit("mean_depth", [](const CellSummary& c) { return c.mean_depth; });
    if (!plan.trees_only) fit("dist", [](const CellSummary& c) { return c.median_dist; });
    out.push_back(std::move(us));
  }
  return out;
}

std::string summary_json(const std::vector<USummary>& summary) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& us : summary) {
    nlohmann::ordered_json ju;
    ju["u"] = us.u;
    ju["regime"] = us.regime;
    auto& cells = ju["cells"] = nlohmann::ordered_json::array();
    for (const auto& c : us.cells) {
      nlohmann::ordered_json jc;
      jc["n"] = c.n;
      jc["replicas"] = c.replicas;
      jc["errors"] = c.errors;
      jc["approx"] = c.approx;
      jc["mean_LB1"] = number_or_null(c.mean_LB1);
      jc["median_LB1"] = number_or_null(c.median_LB1);
      jc["mean_LB2"] = number_or_null(c.mean_LB2);
      jc["mean_LB3"] = number_or_null(c.mean_LB3);
      jc["mean_b"] = number_or_null(c.mean_b);
      jc["mean_height"] = number_or_null(c.mean_height);
      jc["mean_depth"] = number_or_null(c.mean_depth);
      jc["rescaled_depth"] = number_or_null(c.rescaled_depth);
      jc["median_dist"] = c.median_dist >= 0 ? nlohmann::ordered_json(c.median_dist) : nlohmann::ordered_json(nullptr);
      jc["predicted_LB1"] = number_or_null(c.predicted_LB1);
      jc["deviation"] = number_or_null(c.deviation);
      jc["within_4"] = number_or_null(c.within_4);
      cells.push_back(std::move(jc));
    }
    auto& fits = ju["fits"] = nlohmann::ordered_json::object();
    for (const auto& f : us.fits) {
      fits[f.statistic] = {{"slope", f.fit.slope},
                           {"stderr", f.fit.stderr_slope},
                           {"r2", f.fit.r2},
                           {"intercept", f.fit.intercept},
                           {"points", f.fit.points}};
    }
    j.push_back(std::move(ju));
  }
  return j.dump(2) + "\n";
}

}  // namespace blockmap
