#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "batchbai/instance.hpp"
#include "batchbai/optdesign.hpp"
#include "batchbai/trace.hpp"

namespace batchbai {

/// Parameters of instance-sensitive RAGE. With beta_sample == 0 the extra
/// budget term is dropped entirely and the algorithm is plain RAGE with a
/// geometric grid.
struct RageConfig {
  double beta_conf = 5.0;
  double beta_sample = 5.0 / 3.0;
  double beta_grid = 4.0;
  double delta = 0.1;
  std::size_t max_batches = 64;
  DesignOptions design;

  static RageConfig theory_defaults() { return {}; }
  void validate() const;
};

/// N_r = ceil(4 max{2 ln(|S_r|^2 / delta_r) rho_r L_r, d}) with
/// delta_r = delta / r^2, raised to d + 1 when needed so rounding applies.
std::uint64_t rage_design_budget(double rho, double budget, std::size_t survivors,
                                 std::size_t batch, double delta, std::size_t dim);

/// Largest integer t with base^t <= value (value >= 1, base > 1).
int grid_exponent(double value, double base);

/// One run of the linear elimination algorithm. Each batch rounds the
/// current design, pulls from derive_seed(seed, batch), fits theta by least
/// squares on that batch's samples only, and eliminates arms whose estimated
/// gap reaches beta_conf / sqrt(L_r).
RunTrace run_is_rage(const LinearInstance& instance, const RageConfig& config,
                     std::uint64_t seed);

/// Idealized batch-complexity recursion for linear instances.
///
/// Steps are 1-based: index r - 1 of the vectors is step r. The budget of
/// step r is 4^exponents[r-1]; `potentials` has one entry per step before
/// the last (the potential of the final step involves a single arm and is
/// undefined).
struct LinearComplexityReport {
  std::size_t r_instance = 0;
  /// Number of distinct U_r over steps 1 .. r_instance.
  std::size_t alpha = 0;
  double psi_star = 0.0;
  double rho_starred = 0.0;  // design value of Y*(X)
  double min_gap = 0.0;
  /// alpha + log_{5/4}(900 log2(1 / min_gap) psi_star / rho_starred).
  double bound_value = 0.0;
  std::vector<int> exponents;
  std::vector<std::vector<ArmId>> u_sets;
  std::vector<double> potentials;
};

LinearComplexityReport batch_complexity_linear(const LinearInstance& instance,
                                               const DesignOptions& options = {});

struct ContainmentViolation {
  std::size_t batch = 0;
  ArmId arm = 0;
  double gap = 0.0;
  double limit = 0.0;
};

/// Checks S_{r+1} within {z : gap_z <= 3 beta_conf / sqrt(L_r)} for every
/// batch. A diagnostic: it may fail on the low-probability bad event.
std::vector<ContainmentViolation> survivor_containment_check(const RunTrace& trace,
                                                             const LinearInstance& instance,
                                                             double beta_conf);

}  // namespace batchbai
