#include <gtest/gtest.h>

#include <cmath>

#include "batchbai/errors.hpp"
#include "batchbai/generators.hpp"
#include "batchbai/mab.hpp"

using namespace batchbai;

TEST(IsSe, PullCountFormula) {
  // ceil(4 * ln(2 / (0.3 / pi^2))) = ceil(16.75...)
  EXPECT_EQ(se_pulls_per_arm(4.0, 1, 2, 0.1), 17u);
  // Later batches use r^2 * n in the log with the original arm count.
  const double d1 = 0.3 / (M_PI * M_PI);
  EXPECT_EQ(se_pulls_per_arm(16.0, 3, 10, 0.1),
            static_cast<std::uint64_t>(std::ceil(16.0 * std::log(90.0 / d1))));
}

TEST(IsSe, BudgetUpdateAfterOneElimination) {
  // Three arms, zero noise: arm 2 (gap 1) drops in batch 1 while arms 0 and
  // 1 (gap 0.1) stay, so L_2 = 4 * 4 + (25/9) * (1/2) * 1^-2.
  SeConfig config;
  config.beta_conf = 1.0;
  const MabInstance inst({1.0, 0.9, 0.0}, 1e-12);
  const RunTrace trace = run_is_se(inst, config, 3);
  ASSERT_GE(trace.batches.size(), 2u);
  EXPECT_EQ(trace.batches[0].eliminated, (std::vector<ArmId>{2}));
  EXPECT_NEAR(trace.batches[1].budget, 16.0 + 25.0 / 18.0, 1e-9);  // 17.3889
  EXPECT_NEAR(17.38888888888889, *trace.batches[0].next_budget, 1e-9);
}

TEST(IsSe, ZeroNoiseSingleBatch) {
  SeConfig config;
  config.beta_conf = 1.0;
  const RunTrace trace = run_is_se(MabInstance({0.9, 0.1}, 1e-12), config, 11);
  EXPECT_EQ(trace.total_batches, 1u);
  EXPECT_EQ(trace.returned_arm, 0u);
  EXPECT_EQ(trace.success, std::optional<bool>(true));
  EXPECT_EQ(trace.total_samples, 2 * se_pulls_per_arm(4.0, 1, 2, 0.1));
}

TEST(IsSe, BetaSampleZeroIsGeometric) {
  SeConfig config;
  config.beta_sample = 0.0;
  config.beta_conf = 1.0;
  const MabInstance inst = gen_example(3, 64);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const RunTrace trace = run_is_se(inst, config, seed);
    for (std::size_t i = 0; i + 1 < trace.batches.size(); ++i) {
      EXPECT_EQ(trace.batches[i + 1].budget, config.beta_grid * trace.batches[i].budget);
    }
  }
}

TEST(IsSe, SurvivorsShrinkAndReturnIsLastSurvivor) {
  const MabInstance inst = gen_example(1, 30);
  const RunTrace trace = run_is_se(inst, {}, 5);
  std::size_t prev = inst.size();
  std::uint64_t samples = 0;
  for (const auto& b : trace.batches) {
    EXPECT_EQ(b.pulls_per_arm.size(), prev);
    EXPECT_EQ(b.survivors.size() + b.eliminated.size(), prev);
    prev = b.survivors.size();
    samples += b.total_pulls();
  }
  EXPECT_EQ(prev, 1u);
  EXPECT_EQ(trace.batches.back().survivors.front(), trace.returned_arm);
  EXPECT_EQ(samples, trace.total_samples);
}

TEST(IsSe, SeedDeterminism) {
  const MabInstance inst = gen_example(2, 40);
  const RunTrace a = run_is_se(inst, {}, 99);
  const RunTrace b = run_is_se(inst, {}, 99);
  const RunTrace c = run_is_se(inst, {}, 100);
  EXPECT_EQ(a.total_samples, b.total_samples);
  EXPECT_EQ(a.batches.front().empirical_means, b.batches.front().empirical_means);
  EXPECT_NE(a.batches.front().empirical_means, c.batches.front().empirical_means);
}

TEST(IsSe, BatchCapRaisesWithPartialTrace) {
  SeConfig config;
  config.max_batches = 2;
  try {
    run_is_se(MabInstance({0.5, 0.49}), config, 1);
    FAIL() << "expected BudgetExhausted";
  } catch (const BudgetExhausted& e) {
    EXPECT_EQ(e.partial_trace().batches.size(), 2u);
  }
}

TEST(IsSe, RejectsBadConfig) {
  SeConfig config;
  config.delta = 1.5;
  EXPECT_THROW(run_is_se(MabInstance({1.0, 0.0}), config, 0), InvalidArgument);
  config = {};
  config.beta_grid = 1.0;
  EXPECT_THROW(run_is_se(MabInstance({1.0, 0.0}), config, 0), InvalidArgument);
}

TEST(IsSe, EmpiricalEnvironment) {
  const EmpiricalInstance emp({{-5.0, -4.0}, {-1.0, -1.0}, {-3.0}});
  SeConfig config;
  config.beta_conf = 1.0;
  const RunTrace trace = run_is_se(emp, config, 2);
  EXPECT_EQ(trace.returned_arm, 1u);
  EXPECT_EQ(trace.success, std::optional<bool>(true));
}

TEST(EventCheck, ZeroNoiseRatiosAreOne) {
  SeConfig config;
  config.beta_conf = 1.0;
  const MabInstance inst = gen_example(2, 32, 1e-12);
  const RunTrace trace = run_is_se(inst, config, 0);
  const EventReport report = empirical_event_check(trace, gap_profile(inst));
  EXPECT_EQ(report.checked, inst.size() - 1);
  EXPECT_TRUE(report.holds());
}

TEST(EventCheck, FlagsOverestimate) {
  RunTrace trace;
  BatchRecord b;
  b.index = 1;
  b.eliminated = {1};
  b.gap_estimates = {{1, 1.0}};
  trace.batches.push_back(b);
  const EventReport report = empirical_event_check(trace, gap_profile(MabInstance({0.5, 0.0})));
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].arm, 1u);
}

TEST(EventCheck, HoldsMostOfTheTime) {
  const MabInstance inst = gen_example(1, 20);
  const GapProfile truth = gap_profile(inst);
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    if (!empirical_event_check(run_is_se(inst, {}, seed), truth).holds()) ++failures;
  }
  EXPECT_LE(failures, 16);  // 0.1 plus binomial slack at 100 runs
}
