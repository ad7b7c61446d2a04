#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "batchbai/instance.hpp"
#include "batchbai/trace.hpp"

namespace batchbai {

/// Parameters of instance-sensitive successive elimination. With
/// beta_sample == 0 the algorithm is plain successive elimination.
struct SeConfig {
  double beta_conf = 5.0 * std::sqrt(2.0);
  double beta_sample = 25.0 / 9.0;
  double beta_grid = 4.0;
  double delta = 0.1;
  std::size_t max_batches = 64;

  /// Constants under which the correctness and batch guarantees are proven.
  static SeConfig theory_defaults() { return {}; }

  /// Throws InvalidArgument unless every field is in range.
  void validate() const;
};

/// ceil(L * ln(r^2 n / delta_1)) with delta_1 = 3 delta / pi^2: the number of
/// pulls of each surviving arm in batch `r` (1-based).
std::uint64_t se_pulls_per_arm(double budget, std::size_t batch, std::size_t arm_count,
                               double delta);

/// Runs the elimination loop until one arm survives. Each batch draws from
/// its own stream derive_seed(seed, batch), so the trace is a pure function
/// of (env, config, seed). Throws BudgetExhausted after config.max_batches.
RunTrace run_is_se(const MabEnvironment& env, const SeConfig& config, std::uint64_t seed);

struct EventViolation {
  std::size_t batch = 0;
  ArmId arm = 0;
  double estimate = 0.0;  // gap estimate at elimination
  double gap = 0.0;       // true gap
};

/// Whether every eliminated arm's gap estimate fell in [gap/3, 5 gap/3].
struct EventReport {
  std::size_t checked = 0;
  std::vector<EventViolation> violations;

  bool holds() const noexcept { return violations.empty(); }
};

EventReport empirical_event_check(const RunTrace& trace, const GapProfile& truth);

}  // namespace batchbai
