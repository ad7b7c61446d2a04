#pragma once

#include <cstddef>

#include "batchbai/instance.hpp"

namespace batchbai {

/// The three synthetic families with best mean 1/2 and smallest gap 1/sqrt(n).
///
///  1: n - 2 arms at gap 1/2 and one arm at gap 1/sqrt(n).
///  2: one arm at each gap 1/4, 1/8, ... above 1/sqrt(n), one arm at gap
///     1/sqrt(n), and the rest at gap 1/2.
///  3: tiers of floor(x / 4^(k-1)) arms at gap 2^-k (x = (3n - 2) / 4, at
///     least one arm per tier) above 1/sqrt(n), one arm at gap 1/sqrt(n), and
///     the rest at gap 1/2.
///
/// Arm 0 is the best arm, followed by the mean-0 arms, then the remaining
/// arms by increasing mean. Throws GeneratorParameter if the tiers do not fit
/// in n arms.
MabInstance gen_example(int which, std::size_t n, double noise_sd = 1.0);

/// Standard-basis linear instance whose theta_star is the mean vector of
/// gen_example(which, n), so e_i^T theta_star = mu_i.
LinearInstance gen_basis_linear(int which, std::size_t n, double noise_sd = 1.0);

}  // namespace batchbai
