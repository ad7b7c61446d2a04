#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "batchbai/instance.hpp"

namespace batchbai {

/// Sets of vectors are stored one vector per row.
using VectorSet = Eigen::MatrixXd;

/// All ordered differences x - x' of distinct rows, with duplicate vectors
/// removed. Throws DegenerateSet for fewer than two rows.
VectorSet difference_set(const VectorSet& points);

/// x_i - x_j for i < j only. Quadratic forms are symmetric in the sign of y,
/// so this is what the solvers evaluate.
VectorSet pairwise_differences(const VectorSet& points);

/// x_best - x for every other row.
VectorSet starred_difference_set(const VectorSet& points, std::size_t best_row);

/// Rows of `arms` selected by `ids`, in the given order.
VectorSet select_rows(const Eigen::MatrixXd& arms, const std::vector<ArmId>& ids);

struct DesignOptions {
  /// The solver stops once the certified relative duality gap, or the relative
  /// improvement of the best value over a 1000-iteration window, drops below tol.
  double tol = 1e-4;
  std::size_t max_iters = 10000;
};

struct Design {
  std::vector<double> lambda;  // one weight per arm
  double rho = 0.0;            // max_y ||y||^2 under lambda
  std::size_t iterations = 0;
  /// (rho - certified lower bound on the optimum) / rho.
  double gap_certificate = 0.0;
};

/// max_{y in tests} y^T A(lambda)^+ y with A(lambda) = sum_x lambda_x x x^T.
/// Returns +inf if some test vector is not covered by the support of lambda.
double design_value(const Eigen::MatrixXd& arms, const std::vector<double>& lambda,
                    const VectorSet& tests);

/// Frank-Wolfe minimization of design_value over the simplex, starting from
/// uniform weights with step 2/(k+2). The returned weights are the best
/// iterate seen. Throws UnreachableDirection if a test vector is outside the
/// span of the arms.
Design solve_design(const Eigen::MatrixXd& arms, const VectorSet& tests,
                    const DesignOptions& options = {});

/// Integer pull counts over arms.
struct Allocation {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
};

/// max_{y in tests} y^T (sum_x n_x x x^T)^+ y; +inf when uncovered.
double allocation_value(const Eigen::MatrixXd& arms, const std::vector<std::uint64_t>& counts,
                        const VectorSet& tests);

/// Largest-remainder apportionment of total * lambda, repaired by single-pull
/// moves until allocation_value <= (2 / total) * design_value(lambda / sum).
/// lambda need not be normalized.
/// Throws InsufficientBudget when total <= dim and RoundingFailure when the
/// repair budget of `total` moves runs out.
Allocation round_design(const std::vector<double>& lambda, std::uint64_t total,
                        const Eigen::MatrixXd& arms, const VectorSet& tests);

/// min_lambda max_{x != x*} ||x - x*||^2_{A(lambda)^-1} / gap_x^2, computed
/// with solve_design on the gap-scaled differences. Needs theta_star, so it
/// is only meaningful to evaluators.
double psi_star(const LinearInstance& instance, const DesignOptions& options = {});

}  // namespace batchbai
