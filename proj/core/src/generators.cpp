#include "batchbai/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "batchbai/errors.hpp"

namespace batchbai {
namespace {

// Gaps strictly between 1/sqrt(n) and 1/2 that the tiered families use:
// 2^-k for k = first .. while 2^-k > 1/sqrt(n).
std::vector<int> tier_exponents(std::size_t n, int first) {
  const double floor_gap = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<int> ks;
  for (int k = first; std::ldexp(1.0, -k) > floor_gap; ++k) ks.push_back(k);
  return ks;
}

MabInstance assemble(std::size_t n, std::vector<double> tier_gaps, double noise_sd) {
  // tier_gaps lists the non-1/2 gaps, largest first; the smallest gap arm is
  // appended, and gap-1/2 arms fill up to n.
  const double smallest = 1.0 / std::sqrt(static_cast<double>(n));
  tier_gaps.push_back(smallest);
  if (tier_gaps.size() + 1 > n) {
    throw GeneratorParameter("n = " + std::to_string(n) + " is too small for the tier pattern");
  }
  std::vector<double> means;
  means.reserve(n);
  means.push_back(0.5);
  const std::size_t fill = n - 1 - tier_gaps.size();
  means.insert(means.end(), fill, 0.0);
  for (double g : tier_gaps) means.push_back(0.5 - g);
  return MabInstance(std::move(means), noise_sd);
}

}  // namespace

MabInstance gen_example(int which, std::size_t n, double noise_sd) {
  switch (which) {
    case 1: {
      if (n < 2) throw GeneratorParameter("example 1 needs n >= 2");
      return assemble(n, {}, noise_sd);
    }
    case 2: {
      if (n < 4) throw GeneratorParameter("example 2 needs n >= 4");
      std::vector<double> gaps;
      for (int k : tier_exponents(n, 2)) gaps.push_back(std::ldexp(1.0, -k));
      return assemble(n, std::move(gaps), noise_sd);
    }
    case 3: {
      if (n < 4) throw GeneratorParameter("example 3 needs n >= 4");
      const double x = (3.0 * static_cast<double>(n) - 2.0) / 4.0;
      std::vector<double> gaps;
      // Tier k = 1 (gap 1/2) is the fill; tiers k >= 2 are explicit.
      for (int k : tier_exponents(n, 2)) {
        const double size = std::floor(x / std::ldexp(1.0, 2 * (k - 1)));
        const auto count = static_cast<std::size_t>(std::max(1.0, size));
        gaps.insert(gaps.end(), count, std::ldexp(1.0, -k));
      }
      return assemble(n, std::move(gaps), noise_sd);
    }
    default:
      throw GeneratorParameter("unknown example " + std::to_string(which) + " (expected 1, 2 or 3)");
  }
}

LinearInstance gen_basis_linear(int which, std::size_t n, double noise_sd) {
  return as_basis_linear(gen_example(which, n, noise_sd));
}

}  // namespace batchbai
