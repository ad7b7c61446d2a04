#include "batchbai/complexity.hpp"

#include <algorithm>

#include "batchbai/errors.hpp"

namespace batchbai {
namespace {

void check_gaps(const GapProfile& profile) {
  if (profile.deltas.empty()) throw InvalidArgument("profile has no suboptimal arm");
  for (double d : profile.deltas) {
    if (!(d > 0.0)) throw NonUniqueBest("gaps must be strictly positive");
  }
}

// The recursion only ever needs |U_r|: with gaps sorted ascending, U_r is
// the suffix of arms whose gap clears the threshold.
struct Recursion {
  std::vector<double> lbar;
  std::vector<std::size_t> u_size;
};

Recursion run_recursion(const GapProfile& profile) {
  const auto& deltas = profile.deltas;
  const std::size_t m = deltas.size();
  const double n = static_cast<double>(profile.arm_count());

  // suffix_inv[k] = sum_{i >= k} 1 / deltas[i]^2
  std::vector<double> suffix_inv(m + 1, 0.0);
  for (std::size_t k = m; k-- > 0;) suffix_inv[k] = suffix_inv[k + 1] + 1.0 / (deltas[k] * deltas[k]);

  Recursion rec;
  rec.lbar.push_back(1.0);
  rec.u_size.push_back(0);
  while (rec.u_size.back() < m) {
    const std::size_t u = rec.u_size.back();
    const double lbar =
        4.0 * rec.lbar.back() + suffix_inv[m - u] / (n - static_cast<double>(u));
    const double threshold = kRecursionConstant / std::sqrt(lbar);
    const auto first = std::lower_bound(deltas.begin(), deltas.end(), threshold);
    rec.lbar.push_back(lbar);
    rec.u_size.push_back(static_cast<std::size_t>(deltas.end() - first));
  }
  return rec;
}

}  // namespace

double h_index(const GapProfile& profile) {
  check_gaps(profile);
  double h = 0.0;
  for (double d : profile.deltas) h += 1.0 / (d * d);
  return h;
}

ComplexityReport batch_complexity_mab(const GapProfile& profile) {
  ComplexityReport report;
  report.h_instance = h_index(profile);
  const Recursion rec = run_recursion(profile);

  report.r_instance = rec.lbar.size() - 1;
  report.lbar = rec.lbar;
  for (std::size_t r = 0; r < rec.u_size.size(); ++r) {
    std::vector<ArmId> set(profile.arms.end() - static_cast<std::ptrdiff_t>(rec.u_size[r]),
                           profile.arms.end());
    std::sort(set.begin(), set.end());
    report.u_sets.push_back(std::move(set));
    if (r + 1 < rec.u_size.size() && rec.u_size[r] != rec.u_size[r + 1]) ++report.alpha;
  }

  const double n = static_cast<double>(profile.arm_count());
  report.bound_value = static_cast<double>(report.alpha) +
                       std::log(450.0 * report.h_instance / n) / std::log(451.0 / 450.0);
  const double d2 = profile.smallest();
  report.grid_bound =
      static_cast<std::size_t>(std::ceil(std::log(450.0 / (d2 * d2)) / std::log(4.0))) + 1;
  return report;
}

std::vector<double> potential_sequence(const GapProfile& profile) {
  check_gaps(profile);
  const Recursion rec = run_recursion(profile);
  const auto& deltas = profile.deltas;
  const std::size_t m = deltas.size();
  const double n = static_cast<double>(profile.arm_count());

  std::vector<double> potentials;
  potentials.reserve(rec.lbar.size());
  for (std::size_t r = 0; r < rec.lbar.size(); ++r) {
    const std::size_t u = rec.u_size[r];
    double eliminated = 0.0;
    for (std::size_t k = m - u; k < m; ++k) eliminated += 450.0 / (deltas[k] * deltas[k]);
    potentials.push_back(rec.lbar[r] * (n - static_cast<double>(u)) + eliminated);
  }
  return potentials;
}

}  // namespace batchbai
