#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "blockmap/model_sampler.hpp"
#include "blockmap/stats.hpp"

namespace blockmap {

struct ExperimentPlan {
  std::vector<double> u_grid;
  std::vector<std::int64_t> n_grid;
  std::int64_t replicas = 10;
  std::uint64_t seed = 0;
  ObjectKind kind = ObjectKind::Quad;
  /// Tree method for every cell; by default experiment_method(u, n).
  std::optional<TreeMethod> method;
  /// Sample block trees only: no assembly, so dist and diam_lb are not measured.
  bool trees_only = false;
  std::size_t distance_reps = 16;
  /// Fill the ms column with wall times. Off by default so outputs are reproducible.
  bool record_time = false;
  unsigned threads = 1;
  std::int64_t j_max = std::int64_t{1} << 16;
  std::uint64_t max_rejections = 100'000'000;
};

/// Exact methods where practical: UniformDirect at u = 1, otherwise default_tree_method.
TreeMethod experiment_method(double u, std::int64_t n);

/// Throws InvalidArgument if the plan is empty or a cell is outside its method's limits.
void validate(const ExperimentPlan& plan);

/// Seed of one replica; the row can be regenerated with sample_model at this seed.
std::uint64_t replica_seed(std::uint64_t base, std::size_t u_index, std::size_t n_index, std::int64_t replica);

/// Samples and measures one replica.
SampleRecord run_replica(const ModelSampler& sampler, const ExperimentPlan& plan, std::uint64_t seed,
                         std::int64_t replica);

/// Column names of the CSV output.
const std::vector<std::string>& record_columns();
std::string csv_header();
std::string csv_row(const SampleRecord& r);

struct CellSummary {
  double u = 0;
  std::int64_t n = 0;
  std::int64_t replicas = 0;
  std::int64_t errors = 0;
  bool approx = false;
  double mean_LB1 = 0, mean_LB2 = 0, mean_LB3 = 0;
  double median_LB1 = 0;
  double mean_b = 0;
  double mean_height = 0;
  double mean_depth = 0;
  /// sigma(u) * mean depth / sqrt(4n), supercritical only (NaN otherwise).
  double rescaled_depth = 0;
  double median_dist = -1;
  double predicted_LB1 = 0;
  /// Mean of LB1 - predicted_LB1 (mean LB1/n - (1 - E) below 9/5, NaN at 9/5).
  double deviation = 0;
  /// Fraction of replicas with |LB1 - prediction| <= 4 (supercritical only).
  double within_4 = 0;
};

struct FitSummary {
  std::string statistic;
  ExponentFit fit;
};

struct USummary {
  double u = 0;
  std::string regime;
  std::vector<CellSummary> cells;
  std::vector<FitSummary> fits;  // over n, excluding the two smallest n
};

struct ExperimentResult {
  std::vector<SampleRecord> records;  // ordered by (u, n, replica)
  std::vector<USummary> summary;
};

/// Runs every replica of the plan on plan.threads threads. Rows go to `csv` (header
/// first) in (u, n, replica) order as soon as all earlier rows are done. Sampler
/// limit failures are recorded in the row and do not stop the run.
ExperimentResult run_experiment(const ExperimentPlan& plan, std::ostream* csv = nullptr,
                                const std::function<void(std::size_t, std::size_t)>& progress = {});

/// Means, medians, fitted exponents and predictions per u.
std::vector<USummary> summarize(const ExperimentPlan& plan, const std::vector<SampleRecord>& records);
std::string summary_json(const std::vector<USummary>& summary);

}  // namespace blockmap
