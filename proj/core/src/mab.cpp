#include "batchbai/mab.hpp"

#include <cassert>
#include <numbers>
#include <string>

#include "batchbai/errors.hpp"
#include "batchbai/rng.hpp"

namespace batchbai {

void SeConfig::validate() const {
  if (!(beta_conf > 0.0)) throw InvalidArgument("beta_conf must be positive");
  if (!(beta_sample >= 0.0)) throw InvalidArgument("beta_sample must be nonnegative");
  if (!(beta_grid > 1.0)) throw InvalidArgument("beta_grid must exceed 1");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  if (max_batches == 0) throw InvalidArgument("max_batches must be positive");
}

std::uint64_t se_pulls_per_arm(double budget, std::size_t batch, std::size_t arm_count,
                               double delta) {
  const double delta1 = 3.0 * delta / (std::numbers::pi * std::numbers::pi);
  const double r = static_cast<double>(batch);
  const double pulls = std::ceil(budget * std::log(r * r * static_cast<double>(arm_count) / delta1));
  return static_cast<std::uint64_t>(pulls);
}

RunTrace run_is_se(const MabEnvironment& env, const SeConfig& config, std::uint64_t seed) {
  config.validate();
  const std::size_t n = arm_count(env);

  RunTrace trace;
  trace.seed = seed;

  std::vector<ArmId> survivors(n);
  for (ArmId i = 0; i < n; ++i) survivors[i] = i;

  double budget = config.beta_grid;
  // Running sum over all eliminated arms of (gap estimate at elimination)^-2.
  double eliminated_complexity = 0.0;

  for (std::size_t r = 1; survivors.size() > 1; ++r) {
    if (r > config.max_batches) {
      trace.total_batches = trace.batches.size();
      throw BudgetExhausted("no single survivor after " + std::to_string(config.max_batches) +
                                " batches",
                            std::move(trace));
    }
    BatchRecord batch;
    batch.index = r;
    batch.budget = budget;

    const std::uint64_t pulls = se_pulls_per_arm(budget, r, n, config.delta);
    Rng rng(derive_seed(seed, r));
    for (ArmId arm : survivors) {
      double sum = 0.0;
      for (std::uint64_t k = 0; k < pulls; ++k) sum += pull(env, arm, rng);
      batch.pulls_per_arm[arm] = pulls;
      batch.empirical_means[arm] = sum / static_cast<double>(pulls);
    }

    // Lowest arm id wins ties.
    ArmId leader = survivors.front();
    for (ArmId arm : survivors) {
      if (batch.empirical_means[arm] > batch.empirical_means[leader]) leader = arm;
    }
    const double top = batch.empirical_means[leader];
    const double threshold = config.beta_conf / std::sqrt(budget);

    std::vector<ArmId> next;
    for (ArmId arm : survivors) {
      const double gap = top - batch.empirical_means[arm];
      batch.gap_estimates[arm] = gap;
      if (gap > threshold) {
        assert(gap > 0.0);
        batch.eliminated.push_back(arm);
        eliminated_complexity += 1.0 / (gap * gap);
      } else {
        next.push_back(arm);
      }
    }
    batch.survivors = next;

    const double extra =
        config.beta_sample / static_cast<double>(next.size()) * eliminated_complexity;
    budget = config.beta_grid * budget + extra;
    batch.next_budget = budget;

    trace.total_samples += pulls * survivors.size();
    trace.batches.push_back(std::move(batch));
    survivors = std::move(next);
  }

  trace.returned_arm = survivors.front();
  trace.total_batches = trace.batches.size();
  if (const auto best = true_best_arm(env)) trace.success = (*best == trace.returned_arm);
  return trace;
}

EventReport empirical_event_check(const RunTrace& trace, const GapProfile& truth) {
  EventReport report;
  for (const auto& batch : trace.batches) {
    for (ArmId arm : batch.eliminated) {
      const double estimate = batch.gap_estimates.at(arm);
      const double gap = truth.by_arm.at(arm);
      ++report.checked;
      if (estimate < gap / 3.0 || estimate > 5.0 * gap / 3.0) {
        report.violations.push_back({batch.index, arm, estimate, gap});
      }
    }
  }
  return report;
}

}  // namespace batchbai
