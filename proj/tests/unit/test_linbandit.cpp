#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "batchbai/errors.hpp"
#include "batchbai/generators.hpp"
#include "batchbai/linbandit.hpp"

using namespace batchbai;

namespace {

LinearInstance two_basis(double noise = 1.0) {
  return LinearInstance(Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d(1.0, 0.0), noise);
}

LinearInstance random_instance(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> dim(2, 6);
  std::normal_distribution<double> z;
  for (;;) {
    const int d = dim(gen);
    const int n = d + 2;
    Eigen::MatrixXd x(n, d);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < d; ++j) x(i, j) = z(gen);
      x.row(i) /= 1.01 * x.row(i).norm();
    }
    Eigen::VectorXd theta(d);
    for (int j = 0; j < d; ++j) theta[j] = z(gen);
    theta /= theta.norm();
    try {
      LinearInstance inst(x, theta);
      if (inst.smallest_gap() > 0.02 && inst.smallest_gap() < 0.4) return inst;
    } catch (const Error&) {
    }
  }
}

}  // namespace

TEST(GridExponent, ExactPowers) {
  EXPECT_EQ(grid_exponent(4.0, 4.0), 1);
  EXPECT_EQ(grid_exponent(15.99, 4.0), 1);
  EXPECT_EQ(grid_exponent(16.0, 4.0), 2);
  EXPECT_EQ(grid_exponent(1.0, 4.0), 0);
  EXPECT_EQ(grid_exponent(125.0, 5.0), 3);
}

TEST(RageBudget, BasisBatchOne) {
  // ceil(4 * 2 ln(4^2 / 0.1) * 8 * 4) from tests/oracles/oracles.py
  EXPECT_EQ(rage_design_budget(8.0, 4.0, 4, 1, 0.1, 4), 1300u);
  EXPECT_EQ(rage_design_budget(1e-9, 4.0, 2, 1, 0.1, 3), 12u);  // the 4d floor
}

TEST(IsRage, ZeroNoiseSingleBatch) {
  RageConfig config;
  config.beta_conf = 1.0;
  const RunTrace trace = run_is_rage(two_basis(1e-12), config, 0);
  EXPECT_EQ(trace.total_batches, 1u);
  EXPECT_EQ(trace.returned_arm, 0u);
  ASSERT_TRUE(trace.batches[0].linear.has_value());
  EXPECT_NEAR(trace.batches[0].linear->theta_hat[0], 1.0, 1e-6);
  EXPECT_NEAR(trace.batches[0].linear->theta_hat[1], 0.0, 1e-6);
  EXPECT_NEAR(trace.batches[0].gap_estimates.at(1), 1.0, 1e-6);
}

TEST(IsRage, BatchOneBudgetOnBasis) {
  const LinearInstance inst = gen_basis_linear(1, 4);
  const RunTrace trace = run_is_rage(inst, {}, 1);
  const auto& info = *trace.batches[0].linear;
  EXPECT_NEAR(info.rho, 8.0, 8.0 * 1e-3);
  EXPECT_NEAR(static_cast<double>(info.design_budget), 1300.0, 2.0);
  EXPECT_EQ(trace.batches[0].total_pulls(), info.design_budget);
}

TEST(IsRage, BetaSampleZeroIsGeometric) {
  RageConfig config;
  config.beta_sample = 0.0;
  const LinearInstance inst = gen_basis_linear(2, 8);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const RunTrace trace = run_is_rage(inst, config, seed);
    for (std::size_t i = 0; i + 1 < trace.batches.size(); ++i) {
      EXPECT_EQ(trace.batches[i + 1].budget, 4.0 * trace.batches[i].budget);
    }
  }
}

TEST(IsRage, DeterministicAndConsistent) {
  const LinearInstance inst = gen_basis_linear(1, 6);
  const RunTrace a = run_is_rage(inst, {}, 4);
  const RunTrace b = run_is_rage(inst, {}, 4);
  EXPECT_EQ(a.total_samples, b.total_samples);
  EXPECT_EQ(a.batches.back().linear->theta_hat, b.batches.back().linear->theta_hat);
  std::uint64_t samples = 0;
  for (const auto& batch : a.batches) samples += batch.total_pulls();
  EXPECT_EQ(samples, a.total_samples);
  EXPECT_EQ(a.batches.back().survivors, (std::vector<ArmId>{a.returned_arm}));
}

TEST(IsRage, SurvivorContainment) {
  const LinearInstance inst = gen_basis_linear(1, 6);
  const RageConfig config;
  int bad = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    if (!survivor_containment_check(run_is_rage(inst, config, seed), inst, config.beta_conf).empty()) ++bad;
  }
  EXPECT_LE(bad, 4);
}

TEST(IsRage, RankDeficientArms) {
  // Three arms in a 2-dimensional subspace of R^3.
  Eigen::MatrixXd x(3, 3);
  x << 1, 0, 0, 0, 1, 0, 0.6, 0.6, 0;
  const LinearInstance inst(x, Eigen::Vector3d(1.0, 0.2, 5.0), 0.1);
  const RunTrace trace = run_is_rage(inst, {}, 8);
  EXPECT_EQ(trace.returned_arm, 0u);
}

TEST(LinearComplexity, TwoArms) {
  const LinearComplexityReport report = batch_complexity_linear(two_basis());
  EXPECT_EQ(report.r_instance, 4u);
  EXPECT_EQ(report.exponents, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_NEAR(report.psi_star, 4.0, 4.0 * 1e-3);
}

TEST(LinearComplexity, PsiStarMatchesGridSearch) {
  // Ex.1 means at n = 3 on the basis; grid-search value from oracles.py.
  const double psi = psi_star(gen_basis_linear(1, 3));
  EXPECT_NEAR(psi, 20.730897009966778, 20.73 * 0.02);
}

TEST(LinearComplexity, PsiStarScalesWithSquaredGap) {
  const LinearInstance base(Eigen::MatrixXd::Identity(3, 3), Eigen::Vector3d(0.6, 0.1, 0.3));
  const LinearInstance scaled(Eigen::MatrixXd::Identity(3, 3), Eigen::Vector3d(0.6, 0.1, 0.3) * 0.5);
  EXPECT_NEAR(psi_star(scaled), 4.0 * psi_star(base), 4.0 * psi_star(base) * 2e-3);
}

TEST(LinearComplexity, PsiStarPermutationInvariant) {
  Eigen::MatrixXd x(3, 2);
  x << 1, 0, 0, 1, 0.6, 0.7;
  Eigen::MatrixXd p(3, 2);
  p << x.row(2), x.row(0), x.row(1);
  const Eigen::Vector2d theta(0.9, 0.2);
  EXPECT_NEAR(psi_star(LinearInstance(x, theta)), psi_star(LinearInstance(p, theta)), 1e-3);
}

TEST(LinearComplexity, RandomInstancesRespectRecursionFacts) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 8; ++trial) {
    const LinearInstance inst = random_instance(gen);
    const LinearComplexityReport r = batch_complexity_linear(inst);
    EXPECT_LE(static_cast<double>(r.r_instance), r.bound_value);
    for (std::size_t i = 0; i + 1 < r.exponents.size(); ++i) EXPECT_GT(r.exponents[i + 1], r.exponents[i]);
    for (std::size_t i = 0; i + 1 < r.potentials.size(); ++i) {
      if (r.u_sets[i] == r.u_sets[i + 1]) EXPECT_GE(r.potentials[i + 1], 1.25 * r.potentials[i] * (1 - 1e-3));
    }
    const auto gaps = inst.gaps();
    const double widest = *std::max_element(gaps.begin(), gaps.end());
    EXPECT_GE(r.psi_star * (1 + 1e-2), r.rho_starred / (widest * widest));
  }
}
