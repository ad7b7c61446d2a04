#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "batchbai/rng.hpp"

namespace batchbai {

using ArmId = std::size_t;

/// Gaussian multi-armed bandit: arm i pays means[i] + noise_sd * z.
class MabInstance {
 public:
  explicit MabInstance(std::vector<double> means, double noise_sd = 1.0);

  const std::vector<double>& means() const noexcept { return means_; }
  double noise_sd() const noexcept { return noise_sd_; }
  std::size_t size() const noexcept { return means_.size(); }
  ArmId best_arm() const noexcept { return best_; }

 private:
  std::vector<double> means_;
  double noise_sd_;
  ArmId best_;
};

/// Suboptimality gaps of an instance. `deltas` is sorted ascending and
/// `arms[k]` is the arm whose gap is `deltas[k]`; `by_arm` holds the gap of
/// every arm in arm order (0 for the best arm).
struct GapProfile {
  std::vector<double> deltas;
  std::vector<ArmId> arms;
  std::vector<double> by_arm;
  ArmId best_index = 0;

  std::size_t arm_count() const noexcept { return by_arm.size(); }
  double smallest() const { return deltas.front(); }
};

GapProfile gap_profile(const MabInstance& instance);

/// Builds a profile directly from gaps of the suboptimal arms. The best arm
/// gets id 0 and the i-th gap belongs to arm i + 1. Throws NonUniqueBest on a
/// non-positive gap.
GapProfile gap_profile_from_gaps(const std::vector<double>& gaps);

/// Linear bandit: arm x (a row of `arms`) pays x^T theta_star + noise_sd * z.
class LinearInstance {
 public:
  LinearInstance(Eigen::MatrixXd arms, Eigen::VectorXd theta_star,
                 double noise_sd = 1.0);

  /// One arm per row.
  const Eigen::MatrixXd& arms() const noexcept { return arms_; }
  const Eigen::VectorXd& theta_star() const noexcept { return theta_; }
  double noise_sd() const noexcept { return noise_sd_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(arms_.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(arms_.cols()); }
  ArmId best_arm() const noexcept { return best_; }

  double mean(ArmId arm) const;
  /// Gap of every arm in arm order; 0 for the best arm.
  std::vector<double> gaps() const;
  double smallest_gap() const;

 private:
  Eigen::MatrixXd arms_;
  Eigen::VectorXd theta_;
  double noise_sd_;
  ArmId best_;
};

/// Arms backed by finite reward pools, sampled uniformly with replacement.
class EmpiricalInstance {
 public:
  explicit EmpiricalInstance(std::vector<std::vector<double>> pools);

  const std::vector<std::vector<double>>& pools() const noexcept { return pools_; }
  std::size_t size() const noexcept { return pools_.size(); }
  double pool_mean(ArmId arm) const;
  /// Arm with the highest pool mean, or nullopt when the maximum is shared.
  std::optional<ArmId> best_arm() const;

 private:
  std::vector<std::vector<double>> pools_;
};

double pull(const MabInstance& instance, ArmId arm, Rng& rng);
double pull(const LinearInstance& instance, ArmId arm, Rng& rng);
double pull(const EmpiricalInstance& instance, ArmId arm, Rng& rng);

/// Anything the elimination algorithm for independent arms can run on.
using MabEnvironment = std::variant<MabInstance, EmpiricalInstance>;

std::size_t arm_count(const MabEnvironment& env);
double pull(const MabEnvironment& env, ArmId arm, Rng& rng);
std::optional<ArmId> true_best_arm(const MabEnvironment& env);

using Instance = std::variant<MabInstance, LinearInstance, EmpiricalInstance>;

/// Embeds a Gaussian instance as a linear one on the standard basis, so that
/// e_i^T theta_star = means[i].
LinearInstance as_basis_linear(const MabInstance& instance);

}  // namespace batchbai
