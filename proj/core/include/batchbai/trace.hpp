#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "batchbai/errors.hpp"
#include "batchbai/instance.hpp"

namespace batchbai {

/// Extra per-batch state recorded by the linear elimination algorithm.
struct LinearBatchInfo {
  std::uint64_t design_budget = 0;  // N_r
  double rho = 0.0;                 // design value of Y(S_r)
  std::vector<double> design;       // weight per arm, arm order
  std::vector<double> theta_hat;
};

struct BatchRecord {
  std::size_t index = 0;  // 1-based
  double budget = 0.0;    // L_r
  std::map<ArmId, std::uint64_t> pulls_per_arm;
  std::map<ArmId, double> empirical_means;
  std::map<ArmId, double> gap_estimates;
  std::vector<ArmId> eliminated;
  std::vector<ArmId> survivors;
  /// L_{r+1}; absent when the batch leaves a single survivor and the
  /// next budget is never needed.
  std::optional<double> next_budget;
  std::optional<LinearBatchInfo> linear;

  std::uint64_t total_pulls() const;
};

struct RunTrace {
  std::vector<BatchRecord> batches;
  ArmId returned_arm = 0;
  std::uint64_t total_samples = 0;
  std::size_t total_batches = 0;
  std::uint64_t seed = 0;
  std::optional<bool> success;
};

/// Raised when a run hits its batch cap; carries everything done so far.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(const std::string& what, RunTrace partial)
      : Error(what), partial_(std::move(partial)) {}

  const RunTrace& partial_trace() const noexcept { return partial_; }

 private:
  RunTrace partial_;
};

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

/// Header of the per-batch CSV export. Linear traces add three columns.
std::string trace_csv_header(bool linear);

/// One row per batch: run_id, batch, L_r, pulls_per_arm_total,
/// eliminated_count, survivors[, N_r, rho_r, theta_hat].
void write_trace_csv(std::ostream& out, const std::string& run_id, const RunTrace& trace,
                     bool linear);

}  // namespace batchbai
