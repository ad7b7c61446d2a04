#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "batchbai/errors.hpp"
#include "batchbai/generators.hpp"
#include "batchbai/instance.hpp"
#include "batchbai/json_io.hpp"
#include "batchbai/rng.hpp"
#include "batchbai/trace.hpp"

using namespace batchbai;

namespace {
constexpr double kTinyNoise = 1e-12;
}

TEST(Rng, DerivedSeedsAreDeterministicAndDistinct) {
  EXPECT_EQ(derive_seed(42, 3), derive_seed(42, 3));
  EXPECT_NE(derive_seed(42, 3), derive_seed(42, 4));
  EXPECT_NE(derive_seed(42, 3), derive_seed(43, 3));
  EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 2));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(7, i));
  EXPECT_EQ(seen.size(), 1000u);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.normal(), b.normal());
}

TEST(Instance, ZeroNoisePullReturnsMean) {
  const MabInstance mab({0.5, 0.0}, kTinyNoise);
  Rng rng(1);
  EXPECT_NEAR(pull(mab, 0, rng), 0.5, 1e-9);

  Eigen::MatrixXd arms(2, 2);
  arms << 1.0, 0.0, 0.0, 1.0;
  const LinearInstance lin(arms, Eigen::Vector2d(0.7, 0.3), kTinyNoise);
  EXPECT_NEAR(pull(lin, 0, rng), 0.7, 1e-9);
}

TEST(Instance, SuccessivePullsDiffer) {
  const MabInstance mab({0.5, 0.0});
  Rng rng(42);
  EXPECT_NE(pull(mab, 0, rng), pull(mab, 0, rng));
}

TEST(Instance, RejectsBadInput) {
  EXPECT_THROW(MabInstance({1.0}), InvalidArgument);
  EXPECT_THROW(MabInstance({1.0, 1.0}), NonUniqueBest);
  EXPECT_THROW(MabInstance({1.0, 0.0}, 0.0), InvalidArgument);
  EXPECT_THROW(MabInstance({1.0, std::nan("")}), InvalidArgument);
  Rng rng(1);
  EXPECT_THROW(pull(MabInstance({1.0, 0.0}), 2, rng), InvalidArm);

  Eigen::MatrixXd too_long(2, 2);
  too_long << 2.0, 0.0, 0.0, 1.0;
  EXPECT_THROW(LinearInstance(too_long, Eigen::Vector2d(1, 0)), InvalidArgument);
  Eigen::MatrixXd tied(2, 2);
  tied << 1.0, 0.0, 1.0, 0.0;
  EXPECT_THROW(LinearInstance(tied, Eigen::Vector2d(1, 0)), NonUniqueBest);
}

TEST(Instance, GapProfiles) {
  EXPECT_EQ(gap_profile(MabInstance({0.5, 0.0})).deltas, (std::vector<double>{0.5}));
  const GapProfile p = gap_profile(MabInstance({1.0, 0.5, 0.0}));
  EXPECT_EQ(p.deltas, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(p.arms, (std::vector<ArmId>{1, 2}));
  EXPECT_EQ(p.best_index, 0u);

  const GapProfile ex = gap_profile(MabInstance({0.5, 0.0, 0.0, 0.25}));
  EXPECT_EQ(ex.deltas, (std::vector<double>{0.25, 0.5, 0.5}));
  EXPECT_EQ(ex.arms.front(), 3u);
}

TEST(Instance, EmpiricalBestArm) {
  const EmpiricalInstance emp({{-5.0, -4.0}, {-1.0, -1.0}});
  EXPECT_EQ(emp.best_arm(), std::optional<ArmId>(1));
  EXPECT_DOUBLE_EQ(emp.pool_mean(0), -4.5);
  EXPECT_FALSE(EmpiricalInstance({{1.0}, {1.0}}).best_arm().has_value());
  EXPECT_THROW(EmpiricalInstance({{1.0}, {}}), InvalidArgument);
}

TEST(Instance, SingletonPoolsAreDeterministic) {
  const EmpiricalInstance emp({{3.0}, {1.0}});
  Rng rng(9);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(pull(emp, 0, rng), 3.0);
}

TEST(Instance, BasisEmbedding) {
  const LinearInstance lin = as_basis_linear(MabInstance({0.5, 0.0, 0.0, 0.25}));
  EXPECT_EQ(lin.dim(), 4u);
  EXPECT_EQ(lin.best_arm(), 0u);
  EXPECT_DOUBLE_EQ(lin.theta_star()[3], 0.25);
  EXPECT_TRUE(lin.arms().isIdentity());
}

TEST(Json, InstancesRoundTripExactly) {
  const std::vector<Instance> instances = {
      gen_example(2, 37, 0.3), Instance(gen_basis_linear(3, 20)),
      Instance(EmpiricalInstance({{0.1, 1.0 / 3.0}, {2.0}}))};
  for (const auto& inst : instances) {
    const Json doc = instance_to_json(inst);
    const Instance back = instance_from_json(Json::parse(doc.dump()));
    EXPECT_EQ(instance_to_json(back), doc);
  }
}

TEST(Json, RejectsMalformedInstances) {
  EXPECT_THROW(instance_from_json(Json{{"kind", "mab"}}), InvalidArgument);
  EXPECT_THROW(instance_from_json(Json{{"kind", "bogus"}}), InvalidArgument);
  EXPECT_THROW(instance_from_json(Json::parse(R"({"kind":"linear","arms":[[1,0],[1]],"theta_star":[1,0]})")),
               InvalidArgument);
}

TEST(Json, TraceRoundTrip) {
  RunTrace trace;
  trace.seed = 5;
  trace.returned_arm = 1;
  trace.total_samples = 30;
  trace.total_batches = 1;
  trace.success = true;
  BatchRecord b;
  b.index = 1;
  b.budget = 4.0;
  b.pulls_per_arm = {{0, 15}, {1, 15}};
  b.empirical_means = {{0, 0.1}, {1, 0.9}};
  b.gap_estimates = {{0, 0.8}, {1, 0.0}};
  b.eliminated = {0};
  b.survivors = {1};
  b.linear = LinearBatchInfo{30, 4.0, {0.5, 0.5}, {0.1, 0.9}};
  trace.batches.push_back(b);
  const Json doc = trace_to_json(trace);
  EXPECT_EQ(trace_to_json(trace_from_json(doc)), doc);
}

TEST(Trace, CsvRows) {
  RunTrace trace;
  BatchRecord b;
  b.index = 1;
  b.budget = 4.0;
  b.pulls_per_arm = {{0, 3}, {1, 3}};
  b.eliminated = {0};
  b.survivors = {1};
  trace.batches.push_back(b);
  std::ostringstream out;
  write_trace_csv(out, "g0_r0", trace, false);
  EXPECT_EQ(trace_csv_header(false), "run_id,batch,L_r,pulls_per_arm_total,eliminated_count,survivors");
  EXPECT_EQ(out.str(), "g0_r0,1,4,6,1,1\n");
  EXPECT_EQ(trace_csv_header(true),
            "run_id,batch,L_r,pulls_per_arm_total,eliminated_count,survivors,N_r,rho_r,theta_hat");
  EXPECT_EQ(format_double(0.1), "0.1");
}
