#include "batchbai/linbandit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "batchbai/errors.hpp"
#include "batchbai/linalg.hpp"
#include "batchbai/rng.hpp"

namespace batchbai {
namespace {

// Memoized design values keyed by the (sorted) arm subset, so that the same
// set always yields the same number within one run or recursion.
class DesignCache {
 public:
  DesignCache(const Eigen::MatrixXd& arms, const DesignOptions& options)
      : arms_(arms), options_(options) {}

  const Design& get(const std::vector<ArmId>& subset) {
    auto it = cache_.find(subset);
    if (it == cache_.end()) {
      it = cache_.emplace(subset, solve_design(arms_, pairwise_differences(select_rows(arms_, subset)),
                                               options_))
               .first;
    }
    return it->second;
  }

  double rho(const std::vector<ArmId>& subset) { return get(subset).rho; }

 private:
  const Eigen::MatrixXd& arms_;
  DesignOptions options_;
  std::map<std::vector<ArmId>, Design> cache_;
};

std::vector<ArmId> all_arms(std::size_t n) {
  std::vector<ArmId> ids(n);
  for (ArmId i = 0; i < n; ++i) ids[i] = i;
  return ids;
}

}  // namespace

void RageConfig::validate() const {
  if (!(beta_conf > 0.0)) throw InvalidArgument("beta_conf must be positive");
  if (!(beta_sample >= 0.0)) throw InvalidArgument("beta_sample must be nonnegative");
  if (!(beta_grid > 1.0)) throw InvalidArgument("beta_grid must exceed 1");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  if (max_batches == 0) throw InvalidArgument("max_batches must be positive");
  if (!(design.tol > 0.0) || design.max_iters == 0) {
    throw InvalidArgument("design solver tolerances must be positive");
  }
}

std::uint64_t rage_design_budget(double rho, double budget, std::size_t survivors,
                                 std::size_t batch, double delta, std::size_t dim) {
  const double r = static_cast<double>(batch);
  const double s = static_cast<double>(survivors);
  const double delta_r = delta / (r * r);
  const double raw = 4.0 * std::max(2.0 * std::log(s * s / delta_r) * rho * budget,
                                     static_cast<double>(dim));
  const auto n = static_cast<std::uint64_t>(std::ceil(raw));
  return std::max<std::uint64_t>(n, dim + 1);
}

int grid_exponent(double value, double base) {
  int t = 0;
  double power = 1.0;
  while (power * base <= value) {
    power *= base;
    ++t;
  }
  return t;
}

RunTrace run_is_rage(const LinearInstance& instance, const RageConfig& config,
                     std::uint64_t seed) {
  config.validate();
  const Eigen::MatrixXd& arms = instance.arms();
  const std::size_t n = instance.size();
  const std::size_t d = instance.dim();
  const ArmSpan span(arms);
  const Eigen::MatrixXd coords = span.coordinates(arms);
  DesignCache designs(arms, config.design);

  RunTrace trace;
  trace.seed = seed;

  std::vector<ArmId> survivors = all_arms(n);
  std::vector<ArmId> eliminated_so_far;
  std::vector<double> frozen_gap(n, 0.0);
  double budget = config.beta_grid;

  for (std::size_t r = 1; survivors.size() > 1; ++r) {
    if (r > config.max_batches) {
      trace.total_batches = trace.batches.size();
      throw BudgetExhausted("no single survivor after " + std::to_string(config.max_batches) +
                                " batches",
                            std::move(trace));
    }
    const Design& design = designs.get(survivors);
    const std::uint64_t total =
        rage_design_budget(design.rho, budget, survivors.size(), r, config.delta, d);
    const Allocation alloc = round_design(design.lambda, total, arms,
                                          pairwise_differences(select_rows(arms, survivors)));

    BatchRecord batch;
    batch.index = r;
    batch.budget = budget;

    Rng rng(derive_seed(seed, r));
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(coords.cols());
    for (ArmId arm = 0; arm < n; ++arm) {
      const std::uint64_t c = alloc.counts[arm];
      if (c == 0) continue;
      double sum = 0.0;
      for (std::uint64_t k = 0; k < c; ++k) sum += pull(instance, arm, rng);
      counts[static_cast<Eigen::Index>(arm)] = static_cast<double>(c);
      rhs += sum * coords.row(static_cast<Eigen::Index>(arm)).transpose();
      batch.pulls_per_arm[arm] = c;
    }
    const Eigen::VectorXd theta_coords = pinv_solve(weighted_gram(coords, counts), rhs);
    const Eigen::VectorXd estimates = coords * theta_coords;

    ArmId leader = survivors.front();
    for (ArmId arm : survivors) {
      batch.empirical_means[arm] = estimates[static_cast<Eigen::Index>(arm)];
      if (estimates[static_cast<Eigen::Index>(arm)] > estimates[static_cast<Eigen::Index>(leader)]) {
        leader = arm;
      }
    }
    const double top = estimates[static_cast<Eigen::Index>(leader)];
    const double threshold = config.beta_conf / std::sqrt(budget);
    std::vector<ArmId> next;
    for (ArmId arm : survivors) {
      const double gap = top - estimates[static_cast<Eigen::Index>(arm)];
      batch.gap_estimates[arm] = gap;
      if (gap >= threshold) {
        batch.eliminated.push_back(arm);
        eliminated_so_far.push_back(arm);
        frozen_gap[arm] = gap;
      } else {
        next.push_back(arm);
      }
    }
    batch.survivors = next;

    LinearBatchInfo info;
    info.design_budget = total;
    info.rho = design.rho;
    info.design = design.lambda;
    const Eigen::VectorXd theta = span.basis() * theta_coords;
    info.theta_hat.assign(theta.data(), theta.data() + theta.size());
    batch.linear = std::move(info);

    if (next.size() > 1) {
      double extra = 0.0;
      if (config.beta_sample > 0.0) {
        const int t_max = grid_exponent(budget, config.beta_grid);
        double numerator = 0.0;
        double power = 1.0;
        for (int t = 1; t <= t_max; ++t) {
          power *= config.beta_grid;
          const double cut = config.beta_sample / std::sqrt(power);
          std::vector<ArmId> kept;
          for (ArmId arm = 0; arm < n; ++arm) {
            const bool gone = std::find(eliminated_so_far.begin(), eliminated_so_far.end(), arm) !=
                              eliminated_so_far.end();
            if (!(gone && frozen_gap[arm] > cut)) kept.push_back(arm);
          }
          numerator += power * designs.rho(kept);
        }
        extra = numerator / designs.rho(next);
      }
      budget = config.beta_grid * budget + extra;
      batch.next_budget = budget;
    }

    trace.total_samples += total;
    trace.batches.push_back(std::move(batch));
    survivors = std::move(next);
  }

  trace.returned_arm = survivors.front();
  trace.total_batches = trace.batches.size();
  trace.success = (trace.returned_arm == instance.best_arm());
  return trace;
}

LinearComplexityReport batch_complexity_linear(const LinearInstance& instance,
                                               const DesignOptions& options) {
  const Eigen::MatrixXd& arms = instance.arms();
  const std::size_t n = instance.size();
  const auto gaps = instance.gaps();
  const ArmId best = instance.best_arm();
  DesignCache designs(arms, options);

  LinearComplexityReport report;
  report.min_gap = instance.smallest_gap();
  if (!(report.min_gap > 0.0)) throw NonUniqueBest("gaps must be strictly positive");

  // Arms with gap > 15 * 2^-t, i.e. U at budget 4^t.
  const auto above = [&](int t) {
    const double cut = std::ldexp(15.0, -t);
    std::vector<ArmId> set;
    for (ArmId i = 0; i < n; ++i) {
      if (i != best && gaps[i] > cut) set.push_back(i);
    }
    return set;
  };
  const auto complement = [&](const std::vector<ArmId>& removed) {
    std::vector<ArmId> kept;
    for (ArmId i = 0; i < n; ++i) {
      if (!std::binary_search(removed.begin(), removed.end(), i)) kept.push_back(i);
    }
    return kept;
  };

  int exponent = 1;
  for (;;) {
    const std::vector<ArmId> u = above(exponent);
    report.exponents.push_back(exponent);
    if (report.u_sets.empty() || report.u_sets.back() != u) ++report.alpha;
    report.u_sets.push_back(u);
    if (u.size() == n - 1) break;

    // For t <= exponent, {x in U : gap > 15 * 2^-t} is simply above(t).
    double potential = 0.0;
    for (int t = 1; t <= exponent; ++t) {
      potential += std::ldexp(1.0, 2 * t) * designs.rho(complement(above(t)));
    }
    report.potentials.push_back(potential);
    const double next = std::ldexp(1.0, 2 * (exponent + 1)) + potential / designs.rho(complement(u));
    exponent = grid_exponent(next, 4.0);
  }
  report.r_instance = report.exponents.size();

  report.psi_star = psi_star(instance, options);
  report.rho_starred = solve_design(arms, starred_difference_set(arms, best), options).rho;
  report.bound_value =
      static_cast<double>(report.alpha) +
      std::log(900.0 * std::log2(1.0 / report.min_gap) * report.psi_star / report.rho_starred) /
          std::log(5.0 / 4.0);
  return report;
}

std::vector<ContainmentViolation> survivor_containment_check(const RunTrace& trace,
                                                             const LinearInstance& instance,
                                                             double beta_conf) {
  const auto gaps = instance.gaps();
  std::vector<ContainmentViolation> out;
  for (const auto& batch : trace.batches) {
    const double limit = 3.0 * beta_conf / std::sqrt(batch.budget);
    for (ArmId arm : batch.survivors) {
      if (gaps.at(arm) > limit) out.push_back({batch.index, arm, gaps[arm], limit});
    }
  }
  return out;
}

}  // namespace batchbai
