#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "batchbai/complexity.hpp"
#include "batchbai/errors.hpp"
#include "batchbai/generators.hpp"

using namespace batchbai;

TEST(HIndex, Examples) {
  EXPECT_DOUBLE_EQ(h_index(gap_profile_from_gaps({0.5})), 4.0);
  EXPECT_DOUBLE_EQ(h_index(gap_profile_from_gaps({0.5, 1.0})), 5.0);
  EXPECT_NEAR(h_index(gap_profile(gen_example(1, 100))), 492.0, 1e-9);
  EXPECT_THROW(gap_profile_from_gaps({0.0}), NonUniqueBest);
}

TEST(Recursion, TwoArmsUnitGap) {
  const ComplexityReport report = batch_complexity_mab(gap_profile_from_gaps({1.0}));
  EXPECT_EQ(report.r_instance, 5u);
  EXPECT_EQ(report.lbar, (std::vector<double>{1, 4, 16, 64, 256, 1024}));
  EXPECT_EQ(report.alpha, 1u);
  EXPECT_TRUE(report.u_sets[4].empty());
  EXPECT_EQ(report.u_sets[5], (std::vector<ArmId>{1}));
}

TEST(Recursion, Ex1Values) {
  // Frozen from tests/oracles/oracles.py.
  const ComplexityReport small = batch_complexity_mab(gap_profile(gen_example(1, 64)));
  const ComplexityReport large = batch_complexity_mab(gap_profile(gen_example(1, 4096)));
  EXPECT_EQ(small.r_instance, 8u);
  EXPECT_EQ(large.r_instance, 11u);
  EXPECT_EQ(small.alpha, 2u);
  EXPECT_EQ(large.alpha, 2u);
  EXPECT_EQ(small.grid_bound, 9u);
  EXPECT_EQ(large.grid_bound, 12u);
}

TEST(Recursion, Ex3GrowsWithN) {
  std::size_t prev = 0;
  for (std::size_t n : {64u, 256u, 1024u, 4096u}) {
    const std::size_t r = batch_complexity_mab(gap_profile(gen_example(3, n))).r_instance;
    EXPECT_GT(r, prev);
    prev = r;
  }
}

class RandomProfiles : public ::testing::Test {
 protected:
  static std::vector<GapProfile> make(std::size_t count) {
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<std::size_t> size(2, 50);
    std::uniform_real_distribution<double> gap(0.05, 1.0);
    std::vector<GapProfile> out;
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<double> gaps(size(gen) - 1);
      for (double& g : gaps) g = gap(gen);
      out.push_back(gap_profile_from_gaps(gaps));
    }
    return out;
  }
};

TEST_F(RandomProfiles, StructuralInvariants) {
  for (const auto& p : make(300)) {
    const ComplexityReport report = batch_complexity_mab(p);
    ASSERT_EQ(report.lbar.size(), report.r_instance + 1);
    for (std::size_t r = 0; r + 1 < report.lbar.size(); ++r) {
      EXPECT_GE(report.lbar[r + 1], 4.0 * report.lbar[r]);
      EXPECT_LE(report.u_sets[r].size(), report.u_sets[r + 1].size());
      EXPECT_TRUE(std::includes(report.u_sets[r + 1].begin(), report.u_sets[r + 1].end(),
                                report.u_sets[r].begin(), report.u_sets[r].end()));
    }
    EXPECT_EQ(report.u_sets.back().size(), p.deltas.size());
    EXPECT_LE(report.alpha, report.r_instance);
    EXPECT_LE(report.alpha, p.deltas.size());
    EXPECT_LE(report.r_instance, report.grid_bound);
    EXPECT_LE(static_cast<double>(report.r_instance), report.bound_value);
  }
}

TEST_F(RandomProfiles, PotentialFacts) {
  for (const auto& p : make(300)) {
    const auto h = potential_sequence(p);
    const ComplexityReport report = batch_complexity_mab(p);
    EXPECT_DOUBLE_EQ(h.front(), static_cast<double>(p.arm_count()));
    for (std::size_t r = 0; r + 1 < h.size(); ++r) {
      EXPECT_GE(h[r + 1], h[r]);
      if (report.u_sets[r] == report.u_sets[r + 1]) EXPECT_GE(h[r + 1], 451.0 / 450.0 * h[r]);
    }
  }
}
