#include <benchmark/benchmark.h>

#include "batchbai/complexity.hpp"
#include "batchbai/generators.hpp"
#include "batchbai/linbandit.hpp"
#include "batchbai/mab.hpp"
#include "batchbai/optdesign.hpp"

using namespace batchbai;

static void BM_SolveDesignBasis(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const Eigen::MatrixXd x = Eigen::MatrixXd::Identity(n, n);
  const VectorSet tests = pairwise_differences(x);
  for (auto _ : state) benchmark::DoNotOptimize(solve_design(x, tests).rho);
}
BENCHMARK(BM_SolveDesignBasis)->Arg(4)->Arg(8)->Arg(16);

static void BM_SolveDesignSkewed(benchmark::State& state) {
  // Basis plus a diagonal arm: the optimum is no longer uniform.
  const auto d = static_cast<int>(state.range(0));
  Eigen::MatrixXd x(d + 1, d);
  x.topRows(d).setIdentity();
  x.row(d).setConstant(1.0 / std::sqrt(static_cast<double>(d)));
  const VectorSet tests = pairwise_differences(x);
  for (auto _ : state) benchmark::DoNotOptimize(solve_design(x, tests).rho);
}
BENCHMARK(BM_SolveDesignSkewed)->Arg(4)->Arg(8);

static void BM_RoundDesign(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const Eigen::MatrixXd x = Eigen::MatrixXd::Identity(n, n);
  const VectorSet tests = pairwise_differences(x);
  const Design design = solve_design(x, tests);
  for (auto _ : state) benchmark::DoNotOptimize(round_design(design.lambda, 10000, x, tests).total);
}
BENCHMARK(BM_RoundDesign)->Arg(8)->Arg(16);

static void BM_IsSeEx1(benchmark::State& state) {
  const MabInstance inst = gen_example(1, static_cast<std::size_t>(state.range(0)), 0.1);
  SeConfig config;
  config.beta_conf = 1.0;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_is_se(inst, config, seed++).total_samples);
}
BENCHMARK(BM_IsSeEx1)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_IsRageBasis(benchmark::State& state) {
  const LinearInstance inst = gen_basis_linear(1, static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_is_rage(inst, {}, seed++).total_samples);
}
BENCHMARK(BM_IsRageBasis)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_MabRecursion(benchmark::State& state) {
  const GapProfile profile = gap_profile(gen_example(3, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(batch_complexity_mab(profile).r_instance);
}
BENCHMARK(BM_MabRecursion)->Arg(1 << 10)->Arg(1 << 16);

BENCHMARK_MAIN();
