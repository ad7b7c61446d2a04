#include "batchbai/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "batchbai/errors.hpp"

namespace batchbai {
namespace {

// Index of the unique maximum of `values`; throws NonUniqueBest on a tie.
ArmId unique_argmax(const std::vector<double>& values) {
  ArmId best = 0;
  std::size_t ties = 1;
  for (ArmId i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) {
      best = i;
      ties = 1;
    } else if (values[i] == values[best]) {
      ++ties;
    }
  }
  if (ties != 1) {
    throw NonUniqueBest("best arm is not unique: " + std::to_string(ties) +
                        " arms share the maximum");
  }
  return best;
}

void check_noise(double noise_sd) {
  if (!(noise_sd > 0.0) || !std::isfinite(noise_sd)) {
    throw InvalidArgument("noise_sd must be positive and finite");
  }
}

void check_arm(ArmId arm, std::size_t size) {
  if (arm >= size) {
    throw InvalidArm("arm " + std::to_string(arm) + " out of range for " +
                     std::to_string(size) + " arms");
  }
}

}  // namespace

MabInstance::MabInstance(std::vector<double> means, double noise_sd)
    : means_(std::move(means)), noise_sd_(noise_sd) {
  if (means_.size() < 2) throw InvalidArgument("a bandit instance needs at least 2 arms");
  for (double m : means_) {
    if (!std::isfinite(m)) throw InvalidArgument("arm means must be finite");
  }
  check_noise(noise_sd_);
  best_ = unique_argmax(means_);
}

GapProfile gap_profile(const MabInstance& instance) {
  const auto& means = instance.means();
  GapProfile profile;
  profile.best_index = instance.best_arm();
  const double top = means[profile.best_index];
  profile.by_arm.resize(means.size());
  for (ArmId i = 0; i < means.size(); ++i) {
    profile.by_arm[i] = top - means[i];
    if (i != profile.best_index) profile.arms.push_back(i);
  }
  std::stable_sort(profile.arms.begin(), profile.arms.end(), [&](ArmId a, ArmId b) {
    return profile.by_arm[a] < profile.by_arm[b];
  });
  profile.deltas.reserve(profile.arms.size());
  for (ArmId a : profile.arms) profile.deltas.push_back(profile.by_arm[a]);
  return profile;
}

GapProfile gap_profile_from_gaps(const std::vector<double>& gaps) {
  if (gaps.empty()) throw InvalidArgument("need at least one suboptimal arm");
  std::vector<double> means(gaps.size() + 1, 0.0);
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (!(gaps[i] > 0.0)) throw NonUniqueBest("gaps must be strictly positive");
    means[i + 1] = -gaps[i];
  }
  GapProfile profile = gap_profile(MabInstance(std::move(means)));
  // Use the given gaps verbatim instead of 0 - (0 - g).
  for (std::size_t i = 0; i < gaps.size(); ++i) profile.by_arm[i + 1] = gaps[i];
  for (std::size_t k = 0; k < profile.arms.size(); ++k) {
    profile.deltas[k] = profile.by_arm[profile.arms[k]];
  }
  return profile;
}

LinearInstance::LinearInstance(Eigen::MatrixXd arms, Eigen::VectorXd theta_star,
                               double noise_sd)
    : arms_(std::move(arms)), theta_(std::move(theta_star)), noise_sd_(noise_sd) {
  if (arms_.rows() < 2) throw InvalidArgument("a linear instance needs at least 2 arms");
  if (arms_.cols() < 1 || arms_.cols() != theta_.size()) {
    throw InvalidArgument("theta_star dimension does not match the arms");
  }
  if (!arms_.allFinite() || !theta_.allFinite()) {
    throw InvalidArgument("arms and theta_star must be finite");
  }
  for (Eigen::Index i = 0; i < arms_.rows(); ++i) {
    if (arms_.row(i).norm() > 1.0 + 1e-9) {
      throw InvalidArgument("arm " + std::to_string(i) + " has norm greater than 1");
    }
  }
  if (arms_.isZero(0.0)) throw InvalidArgument("arms span the zero subspace");
  check_noise(noise_sd_);
  const Eigen::VectorXd values = arms_ * theta_;
  best_ = unique_argmax(std::vector<double>(values.data(), values.data() + values.size()));
}

double LinearInstance::mean(ArmId arm) const {
  check_arm(arm, size());
  return arms_.row(static_cast<Eigen::Index>(arm)).dot(theta_);
}

std::vector<double> LinearInstance::gaps() const {
  const Eigen::VectorXd values = arms_ * theta_;
  std::vector<double> out(size());
  for (ArmId i = 0; i < size(); ++i) out[i] = values[best_] - values[static_cast<Eigen::Index>(i)];
  return out;
}

double LinearInstance::smallest_gap() const {
  double g = INFINITY;
  const auto all = gaps();
  for (ArmId i = 0; i < all.size(); ++i) {
    if (i != best_) g = std::min(g, all[i]);
  }
  return g;
}

EmpiricalInstance::EmpiricalInstance(std::vector<std::vector<double>> pools)
    : pools_(std::move(pools)) {
  if (pools_.size() < 2) throw InvalidArgument("an empirical instance needs at least 2 arms");
  for (std::size_t i = 0; i < pools_.size(); ++i) {
    if (pools_[i].empty()) {
      throw InvalidArgument("reward pool of arm " + std::to_string(i) + " is empty");
    }
    for (double v : pools_[i]) {
      if (!std::isfinite(v)) throw InvalidArgument("rewards must be finite");
    }
  }
}

double EmpiricalInstance::pool_mean(ArmId arm) const {
  check_arm(arm, size());
  const auto& pool = pools_[arm];
  return std::accumulate(pool.begin(), pool.end(), 0.0) / static_cast<double>(pool.size());
}

std::optional<ArmId> EmpiricalInstance::best_arm() const {
  std::vector<double> means(size());
  for (ArmId i = 0; i < size(); ++i) means[i] = pool_mean(i);
  try {
    return unique_argmax(means);
  } catch (const NonUniqueBest&) {
    return std::nullopt;
  }
}

double pull(const MabInstance& instance, ArmId arm, Rng& rng) {
  check_arm(arm, instance.size());
  return instance.means()[arm] + instance.noise_sd() * rng.normal();
}

double pull(const LinearInstance& instance, ArmId arm, Rng& rng) {
  return instance.mean(arm) + instance.noise_sd() * rng.normal();
}

double pull(const EmpiricalInstance& instance, ArmId arm, Rng& rng) {
  check_arm(arm, instance.size());
  const auto& pool = instance.pools()[arm];
  return pool[rng.index(pool.size())];
}

std::size_t arm_count(const MabEnvironment& env) {
  return std::visit([](const auto& e) { return e.size(); }, env);
}

double pull(const MabEnvironment& env, ArmId arm, Rng& rng) {
  return std::visit([&](const auto& e) { return pull(e, arm, rng); }, env);
}

std::optional<ArmId> true_best_arm(const MabEnvironment& env) {
  return std::visit([](const auto& e) -> std::optional<ArmId> { return e.best_arm(); }, env);
}

LinearInstance as_basis_linear(const MabInstance& instance) {
  const auto n = static_cast<Eigen::Index>(instance.size());
  Eigen::VectorXd theta(n);
  for (Eigen::Index i = 0; i < n; ++i) theta[i] = instance.means()[static_cast<std::size_t>(i)];
  return LinearInstance(Eigen::MatrixXd::Identity(n, n), std::move(theta), instance.noise_sd());
}

}  // namespace batchbai
