#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "batchbai/instance.hpp"
#include "batchbai/json_io.hpp"
#include "batchbai/optdesign.hpp"
#include "batchbai/trace.hpp"

namespace batchbai {

enum class Algorithm { kSe, kIsSe, kRage, kIsRage };

std::string to_string(Algorithm algorithm);
/// Accepts "se", "is-se", "rage", "is-rage".
Algorithm parse_algorithm(const std::string& name);

struct ParameterGrid {
  std::vector<double> beta_conf;
  std::vector<double> beta_sample;
  std::vector<double> beta_grid;
  std::vector<double> delta;
};

struct GridPoint {
  double beta_conf = 0.0;
  double beta_sample = 0.0;
  double beta_grid = 0.0;
  double delta = 0.0;
};

struct ExperimentSpec {
  Instance instance = MabInstance({1.0, 0.0});
  Algorithm algorithm = Algorithm::kIsSe;
  ParameterGrid grid;
  std::size_t replications = 10;
  std::uint64_t seed = 0;
  std::size_t max_batches = 64;
  DesignOptions design;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  void validate() const;
};

/// Cartesian product of the grid in (beta_conf, beta_sample, beta_grid,
/// delta) order. The plain algorithms (se, rage) ignore beta_sample and use 0.
std::vector<GridPoint> expand_grid(const ExperimentSpec& spec);

struct RunOutcome {
  std::size_t grid_index = 0;
  std::size_t replication = 0;
  std::uint64_t seed = 0;
  std::optional<RunTrace> trace;  // empty when the run failed
  std::string error;
};

struct AggregateRow {
  std::string algo;
  GridPoint point;
  std::size_t n = 0;
  double mean_samples = 0.0;
  double var_samples = 0.0;
  double mean_batches = 0.0;
  double var_batches = 0.0;
  double success_rate = 0.0;
  std::size_t replications = 0;
  std::size_t failures = 0;
};

struct ExperimentResult {
  std::vector<GridPoint> points;
  std::vector<AggregateRow> rows;
  std::vector<RunOutcome> runs;  // grid-major, replication-minor
};

/// Seed of replication `rep`. All grid points share it, so configurations
/// are compared on common random numbers.
std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t rep);

/// Runs every (grid point, replication) pair, possibly in parallel. A failing
/// run is recorded in its outcome and never aborts the sweep. Results do not
/// depend on the number of threads.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Means and unbiased variances over the completed runs; success rate over
/// all runs, counting failures as misses.
AggregateRow aggregate(const std::string& algo, const GridPoint& point, std::size_t n,
                       std::span<const RunOutcome> runs);

std::string aggregate_csv_header();
void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);

/// Parses the JSON form of an ExperimentSpec. The instance is one of
/// {"generator":{"example":1,"n":100,"linear":false,"noise_sd":1}},
/// {"path":"inst.json"} (relative to `base_dir`) or an inline instance
/// document.
ExperimentSpec experiment_spec_from_json(const Json& doc,
                                         const std::filesystem::path& base_dir = {});

/// Writes aggregate.csv, traces.csv and traces/g<grid>_r<rep>.json.
void write_experiment(const ExperimentResult& result, const ExperimentSpec& spec,
                      const std::filesystem::path& out_dir);

/// Re-aggregates the per-run files written by write_experiment.
std::vector<AggregateRow> summarize_directory(const std::filesystem::path& in_dir);

}  // namespace batchbai
