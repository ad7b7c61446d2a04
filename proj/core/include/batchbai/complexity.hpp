#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "batchbai/instance.hpp"

namespace batchbai {

/// Elimination constant of the idealized recursion, 15 * sqrt(2).
inline const double kRecursionConstant = 15.0 * std::sqrt(2.0);

/// Sum over suboptimal arms of 1 / gap^2. Throws NonUniqueBest on a
/// non-positive gap.
double h_index(const GapProfile& profile);

/// Result of the idealized batch-complexity recursion for independent arms.
///
/// Index r of `lbar` and `u_sets` is recursion step r, starting from the
/// initial state lbar[0] = 1, u_sets[0] = {} and ending at step
/// `r_instance`, the first step whose set holds every suboptimal arm.
struct ComplexityReport {
  double h_instance = 0.0;
  std::size_t r_instance = 0;
  /// Number of steps r in [0, r_instance) with U_r != U_{r+1}.
  std::size_t alpha = 0;
  /// alpha + log_{451/450}(450 H / n).
  double bound_value = 0.0;
  /// ceil(log_4(450 / smallest_gap^2)) + 1, the fixed-grid fallback.
  std::size_t grid_bound = 0;
  std::vector<double> lbar;
  std::vector<std::vector<ArmId>> u_sets;
};

ComplexityReport batch_complexity_mab(const GapProfile& profile);

/// Potential H_r = lbar_r (n - |U_r|) + sum_{j in U_r} 450 / gap_j^2 along
/// the same recursion, for r = 0 .. r_instance.
std::vector<double> potential_sequence(const GapProfile& profile);

}  // namespace batchbai
