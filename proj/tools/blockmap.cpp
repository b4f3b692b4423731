#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "blockmap/errors.hpp"
#include "blockmap/experiment.hpp"
#include "blockmap/hemap_io.hpp"
#include "blockmap/model_sampler.hpp"
#include "blockmap/phase.hpp"
#include "blockmap/series.hpp"
#include "blockmap/stats.hpp"
#include "blockmap/tutte.hpp"
#include "verify.hpp"

using json = nlohmann::ordered_json;
using namespace blockmap;

namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

struct Globals {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out;
  std::string format;  // empty: the subcommand default
};

json rational(const mpq_class& q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

/// Exact value of a decimal or fraction literal such as "9/5", "1.8" or "2".
std::optional<mpq_class> exact_value(const std::string& s) {
  if (s.find_first_of("eEinfINFnaNA") != std::string::npos) return std::nullopt;
  try {
    if (s.find('/') != std::string::npos) {
      mpq_class q(s);
      if (q.get_den() == 0) return std::nullopt;
      q.canonicalize();
      return q;
    }
    const auto dot = s.find('.');
    std::string digits = s;
    unsigned decimals = 0;
    if (dot != std::string::npos) {
      decimals = static_cast<unsigned>(s.size() - dot - 1);
      digits.erase(dot, 1);
    }
    if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
    if (digits[0] == '+') digits.erase(0, 1);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, decimals);
    mpq_class q(mpz_class(digits), den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

double parse_u(const std::string& s) {
  // Correctly rounded, unlike mpq_class::get_d which truncates.
  auto to_double = [&](const std::string& t) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("--u: not a number: '" + s + "'");
    }
    if (used != t.size()) throw InvalidArgument("--u: not a number: '" + s + "'");
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) return to_double(s);
  return to_double(s.substr(0, slash)) / to_double(s.substr(slash + 1));
}

void check_u(double u) {
  if (!(u > 0) || !std::isfinite(u)) throw InvalidArgument("--u must be a positive finite number");
}

/// Writes to --out when given, otherwise to stdout.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty() || g.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw Error("cannot open '" + g.out + "' for writing");
  f << text;
  if (!f) throw Error("failed writing '" + g.out + "'");
}

// params ---------------------------------------------------------------------

json params_json(const std::string& u_text, std::optional<std::int64_t> n) {
  const double u = parse_u(u_text);
  check_u(u);
  const PhaseParams p = params(u);
  const auto exact = exact_value(u_text);
  json j;
  j["u"] = u;
  if (exact) j["u_exact"] = rational(*exact);
  j["regime"] = to_string(p.regime);
  j["near_critical"] = p.near_critical;
  j["y"] = p.y;
  const bool at_or_below = exact ? *exact <= mpq_class(9, 5) : u <= kCriticalU;
  if (at_or_below) j["y_exact"] = rational(mpq_class(4, 27));
  j["E"] = p.E;
  if (exact && at_or_below) j["E_exact"] = rational(exact_mean_subcritical(*exact));
  j["B"] = p.B;
  j["B_prime"] = p.Bp;
  j["B_second"] = number(p.Bpp);
  j["M_rho"] = p.M_rho;
  j["w"] = p.w;
  j["c"] = p.c;
  j["sigma2"] = number(p.sigma2);
  j["sigma2_closed"] = number(p.sigma2_closed);
  j["sigma"] = number(p.sigma);
  if (p.regime == Regime::Subcritical) {
    j["condensed_fraction"] = 1 - p.E;
    if (exact) j["condensed_fraction_exact"] = rational(1 - exact_mean_subcritical(*exact));
  }
  if (n) {
    const auto pred = predicted_largest_block(u, static_cast<double>(*n));
    j["largest_block"] = {{"n", *n},
                          {"center", number(pred.center)},
                          {"scale", number(pred.scale)},
                          {"tail_balance", number(pred.tail_balance)}};
  }
  return j;
}

json schema_json() {
  json rows = json::array();
  for (const auto& r : schema_table()) {
    rows.push_back({{"id", r.id},
                    {"maps", r.maps},
                    {"cores", r.cores},
                    {"u_c", rational(r.u_c)},
                    {"alpha", r.alpha.get_str()},
                    {"beta", r.beta.get_str()},
                    {"gamma", r.gamma.get_str()},
                    {"E_at_u_c", rational(r.mean(r.u_c))},
                    {"condensed_fraction_at_1", rational(r.condensed_fraction())}});
  }
  return rows;
}

// series ---------------------------------------------------------------------

std::string series_text(const Globals& g, int max_n, const std::string& law, int n, const std::string& u_text) {
  if (!law.empty()) {
    const auto u = exact_value(u_text);
    if (!u || *u <= 0) throw InvalidArgument("--law needs an exact positive --u such as 9/5 or 1.8");
    if (n < 1) throw InvalidArgument("--law needs --n >= 1");
    const auto table = solve_bivariate(std::max(max_n, n));
    const ExactLaw l = law == "root" ? root_block_law(table, n, *u) : block_number_law(table, n, *u);
    if (g.format == "csv") {
      std::string s = law == "root" ? "k,num,den,p\n" : "b,num,den,p\n";
      for (std::size_t i = 0; i < l.support.size(); ++i) {
        const auto& q = l.probability[i];
        s += std::to_string(l.support[i]) + "," + q.get_num().get_str() + "," + q.get_den().get_str() + "," +
             json(q.get_d()).dump() + "\n";
      }
      return s;
    }
    json j;
    j["law"] = law;
    j["n"] = n;
    j["u"] = rational(*u);
    j["support"] = l.support;
    json probs = json::array();
    for (const auto& q : l.probability) probs.push_back(rational(q));
    j["probability"] = probs;
    return j.dump(2) + "\n";
  }
  const auto table = solve_bivariate(max_n);
  if (g.format == "json") {
    json j;
    j["max_n"] = max_n;
    json rows = json::array();
    for (int k = 0; k <= max_n; ++k) {
      json row = json::array();
      for (const auto& x : table.row(k)) row.push_back(x.get_str());
      rows.push_back(row);
    }
    j["N"] = rows;
    return j.dump(2) + "\n";
  }
  std::string s = "n,b,count\n";
  for (int k = 0; k <= max_n; ++k)
    for (int b = 0; b <= k; ++b) s += std::to_string(k) + "," + std::to_string(b) + "," + table(k, b).get_str() + "\n";
  return s;
}

// sample / blocks ------------------------------------------------------------

TreeMethod method_for(const std::string& name, double u, std::int64_t n) {
  return name.empty() || name == "auto" ? experiment_method(u, n) : parse_tree_method(name);
}

json sample_metadata(const ModelSample& s, const SamplerConfig& c) {
  const auto lb = largest_blocks(s.tree, 3);
  json j;
  j["u"] = c.u;
  j["n"] = c.n;
  j["kind"] = to_string(s.kind);
  j["method"] = to_string(s.method);
  j["approx"] = s.approximate;
  j["seed"] = c.seed;
  j["LB"] = lb;
  j["b"] = s.tree.internal_count();
  j["height"] = tree_height(s.tree);
  j["tree_rejections"] = s.tree_rejections;
  j["block_draws"] = s.block_draws;
  j["rng_digest"] = s.rng_digest;
  return j;
}

// experiment -----------------------------------------------------------------

template <typename T>
std::vector<T> split_list(const std::string& s, T (*parse)(const std::string&)) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse(item));
  return out;
}

std::int64_t parse_n(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not an integer: '" + s + "'");
  }
  if (used != s.size() || v < 1) throw InvalidArgument("sizes must be integers >= 1, got '" + s + "'");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-weighted random planar maps: exact series, phase constants, samplers and experiments."};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (default: $BLOCKMAP_THREADS or 1)")
      ->envname("BLOCKMAP_THREADS")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Output format for series and blocks (default csv)")->check(CLI::IsMember({"csv", "json"}));

  // params
  auto* params_cmd = app.add_subcommand("params", "Phase constants at weight u, as JSON");
  std::string params_u;
  std::optional<std::int64_t> params_n;
  bool params_table = false;
  params_cmd->add_option("--u", params_u, "Block weight u > 0 (decimals and fractions such as 9/5 are exact)");
  params_cmd->add_option("--n", params_n, "Also predict the largest block at this size")->check(CLI::PositiveNumber);
  params_cmd->add_flag("--table", params_table, "Print the table of decomposition schemas instead");

  // series
  auto* series_cmd = app.add_subcommand("series", "Exact counts N(n,b) of maps with n edges and b blocks");
  int series_max_n = 10;
  std::string series_law, series_u = "1";
  int series_n = 0;
  series_cmd->add_option("--max-n", series_max_n, "Largest n")->check(CLI::Range(0, 2000))->capture_default_str();
  series_cmd->add_option("--law", series_law, "Print an exact law instead: root (root block size) or blocks (block count)")
      ->check(CLI::IsMember({"root", "blocks"}));
  series_cmd->add_option("--n", series_n, "Size for --law")->check(CLI::Range(1, 2000));
  series_cmd->add_option("--u", series_u, "Exact weight for --law")->capture_default_str();

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "Sample one object of P_{n,u} and write it in HEMAP format");
  std::string sample_u = "1", sample_kind = "map", sample_method = "auto";
  std::int64_t sample_n = 1;
  std::string sample_meta;
  std::uint64_t sample_max_rej = 100'000'000;
  sample_cmd->add_option("--u", sample_u, "Block weight u > 0")->capture_default_str();
  sample_cmd->add_option("--n", sample_n, "Size: edges (map) or faces (quad)")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 26))->capture_default_str();
  sample_cmd->add_option("--kind", sample_kind, "Object kind")->check(CLI::IsMember({"map", "quad"}))->capture_default_str();
  sample_cmd->add_option("--method", sample_method, "Tree method: auto, rejection, exact-dp, janson or uniform (u = 1)")
      ->check(CLI::IsMember({"auto", "rejection", "exact-dp", "janson", "uniform"}))
      ->capture_default_str();
  sample_cmd->add_option("--meta", sample_meta, "Write sample metadata as JSON to this file");
  sample_cmd->add_option("--max-rejections", sample_max_rej, "Rejection limit")->check(CLI::PositiveNumber)->capture_default_str();

  // blocks
  auto* blocks_cmd = app.add_subcommand("blocks", "Sample uniform blocks: simple quadrangulations or 2-connected maps");
  std::int64_t blocks_k = 1, blocks_count_n = 1;
  std::string blocks_kind = "map", blocks_dir;
  blocks_cmd->add_option("--k", blocks_k, "Block size")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 22))->capture_default_str();
  blocks_cmd->add_option("--kind", blocks_kind, "Block kind")->check(CLI::IsMember({"map", "quad"}))->capture_default_str();
  blocks_cmd->add_option("--count", blocks_count_n, "Number of blocks")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 24))->capture_default_str();
  blocks_cmd->add_option("--out-dir", blocks_dir, "Write block_<i>.hemap files here");

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Replicated sampling campaign: CSV rows and a JSON summary");
  std::string exp_u = "1,1.8,5", exp_n, exp_kind = "quad", exp_method = "auto", exp_summary;
  int exp_log_min = 10, exp_log_max = 14;
  std::int64_t exp_replicas = 10;
  std::size_t exp_reps = 16;
  bool exp_trees = false, exp_timings = false;
  exp_cmd->add_option("--u", exp_u, "Comma-separated u grid")->capture_default_str();
  exp_cmd->add_option("--n", exp_n, "Comma-separated n grid (overrides --log2n-min/--log2n-max)");
  exp_cmd->add_option("--log2n-min", exp_log_min, "Smallest dyadic n = 2^k")->check(CLI::Range(0, 26))->capture_default_str();
  exp_cmd->add_option("--log2n-max", exp_log_max, "Largest dyadic n = 2^k")->check(CLI::Range(0, 26))->capture_default_str();
  exp_cmd->add_option("--replicas", exp_replicas, "Replicas per (u, n)")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 20))->capture_default_str();
  exp_cmd->add_option("--kind", exp_kind, "Object kind")->check(CLI::IsMember({"map", "quad"}))->capture_default_str();
  exp_cmd->add_option("--method", exp_method, "Tree method for every cell (auto picks per cell)")
      ->check(CLI::IsMember({"auto", "rejection", "exact-dp", "janson", "uniform"}))
      ->capture_default_str();
  exp_cmd->add_flag("--trees-only", exp_trees, "Sample block trees only (no dist or diam_lb)");
  exp_cmd->add_option("--dist-reps", exp_reps, "Uniform vertices per replica for the distance median")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 16))->capture_default_str();
  exp_cmd->add_flag("--timings", exp_timings, "Fill the ms column (makes output run-dependent)");
  exp_cmd->add_option("--summary", exp_summary, "Write the JSON summary here (default: stderr)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Reduced-scale self-check; exit status 1 on any failure");
  std::string verify_mutate;
  verify_cmd->add_option("--mutate", verify_mutate, "Corrupt one ingredient on purpose")
      ->check(CLI::IsMember({"blocks_count", "maps_count", "offspring"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*params_cmd) {
      if (params_table) {
        emit(g, schema_json().dump(2) + "\n");
      } else {
        if (params_u.empty()) throw InvalidArgument("params needs --u (or --table)");
        emit(g, params_json(params_u, params_n).dump(2) + "\n");
      }
    } else if (*series_cmd) {
      emit(g, series_text(g, series_max_n, series_law, series_n, series_u));
    } else if (*sample_cmd) {
      SamplerConfig c;
      c.u = parse_u(sample_u);
      check_u(c.u);
      c.n = sample_n;
      c.kind = parse_object_kind(sample_kind);
      c.tree_method = method_for(sample_method, c.u, c.n);
      c.seed = g.seed;
      c.max_rejections = sample_max_rej;
      ModelSampler sampler(c);  // validates the method before any work
      Rng rng(c.seed);
      const ModelSample s = sampler.sample(rng);
      emit(g, c.kind == ObjectKind::Map ? to_hemap(s.map) : to_hemap(s.quad));
      if (!sample_meta.empty()) {
        std::ofstream f(sample_meta, std::ios::binary);
        f << sample_metadata(s, c).dump(2) << "\n";
        if (!f) throw Error("failed writing '" + sample_meta + "'");
      }
    } else if (*blocks_cmd) {
      const ObjectKind kind = parse_object_kind(blocks_kind);
      Rng rng(g.seed);
      BlockHarvester harvester;
      const auto blocks = harvester.take(std::vector<std::int64_t>(static_cast<std::size_t>(blocks_count_n), blocks_k), rng);
      if (!blocks_dir.empty()) std::filesystem::create_directories(blocks_dir);
      std::string csv = "index,k,vertices,faces,hemap_bytes\n";
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        const Quadrangulation q = canonical(blocks[i]);
        std::string text;
        std::int64_t vertices = 0, faces = 0;
        if (kind == ObjectKind::Quad) {
          text = to_hemap(q);
          vertices = static_cast<std::int64_t>(blocks_k) + 2;
          faces = blocks_k;
        } else {
          const HalfEdgeMap m = tutte_inverse(q);
          text = to_hemap(m);
          vertices = static_cast<std::int64_t>(cycles_of(m.sigma_table()).count);
          faces = static_cast<std::int64_t>(cycles_of(face_permutation(m)).count);
        }
        if (!blocks_dir.empty()) {
          const auto path = std::filesystem::path(blocks_dir) / ("block_" + std::to_string(i) + ".hemap");
          std::ofstream f(path, std::ios::binary);
          f << text;
          if (!f) throw Error("failed writing '" + path.string() + "'");
        }
        csv += std::to_string(i) + "," + std::to_string(blocks_k) + "," + std::to_string(vertices) + "," +
               std::to_string(faces) + "," + std::to_string(text.size()) + "\n";
      }
      if (g.format == "json") {
        json j;
        j["k"] = blocks_k;
        j["kind"] = to_string(kind);
        j["count"] = blocks.size();
        j["quadrangulation_draws"] = harvester.draws();
        j["seed"] = g.seed;
        emit(g, j.dump(2) + "\n");
      } else {
        emit(g, csv);
      }
    } else if (*exp_cmd) {
      ExperimentPlan plan;
      plan.u_grid = split_list<double>(exp_u, parse_u);
      for (double u : plan.u_grid) check_u(u);
      if (!exp_n.empty()) {
        plan.n_grid = split_list<std::int64_t>(exp_n, parse_n);
      } else {
        if (exp_log_min > exp_log_max) throw InvalidArgument("--log2n-min exceeds --log2n-max");
        for (int k = exp_log_min; k <= exp_log_max; ++k) plan.n_grid.push_back(std::int64_t{1} << k);
      }
      plan.replicas = exp_replicas;
      plan.seed = g.seed;
      plan.kind = parse_object_kind(exp_kind);
      if (exp_method != "auto") plan.method = parse_tree_method(exp_method);
      plan.trees_only = exp_trees;
      plan.distance_reps = exp_reps;
      plan.record_time = exp_timings;
      plan.threads = g.threads;
      validate(plan);
      std::ofstream file;
      std::ostream* csv = &std::cout;
      if (!g.out.empty() && g.out != "-") {
        file.open(g.out, std::ios::binary);
        if (!file) throw Error("cannot open '" + g.out + "' for writing");
        csv = &file;
      }
      const auto result = run_experiment(plan, csv);
      const std::string summary = summary_json(result.summary);
      if (exp_summary.empty()) {
        std::cerr << summary;
      } else {
        std::ofstream f(exp_summary, std::ios::binary);
        f << summary;
        if (!f) throw Error("failed writing '" + exp_summary + "'");
      }
    } else if (*verify_cmd) {
      cli::VerifyOptions o;
      o.seed = g.seed;
      o.mutate = verify_mutate;
      const auto checks = cli::run_verify(o);
      bool all = true;
      json arr = json::array();
      for (const auto& c : checks) {
        all = all && c.pass;
        arr.push_back({{"name", c.name}, {"tolerance", c.tolerance}, {"observed", c.observed}, {"pass", c.pass}});
      }
      json report;
      report["checks"] = arr;
      report["passed"] = all;
      if (!verify_mutate.empty()) report["mutation"] = verify_mutate;
      emit(g, report.dump(2) + "\n");
      return all ? 0 : kRuntimeError;
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "blockmap: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "blockmap: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}
