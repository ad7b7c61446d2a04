#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace batchbai {

/// SplitMix64 finalizer. Used to turn structured (seed, index...) tuples
/// into well-spread 64-bit seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of the child stream `index` of `parent`. Distinct indices give
/// statistically independent mt19937_64 streams; the mapping is a pure
/// function so results never depend on scheduling.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept;
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a,
                          std::uint64_t b) noexcept;

/// Random stream owned by exactly one run (or one batch of one run).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }

  /// Uniform index in [0, n). n must be positive.
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace batchbai
