#pragma once

#include <vector>

#include <Eigen/Dense>

namespace batchbai {

/// Orthonormal coordinates for the row space of an arm matrix. Every
/// quadratic form in the library is evaluated in these coordinates, which
/// is the same as using the pseudo-inverse restricted to span(X).
class ArmSpan {
 public:
  explicit ArmSpan(const Eigen::MatrixXd& arms, double rel_tol = 1e-10);

  Eigen::Index rank() const noexcept { return basis_.cols(); }
  /// d x rank, orthonormal columns.
  const Eigen::MatrixXd& basis() const noexcept { return basis_; }

  /// Coordinates of each row of `rows`. Throws UnreachableDirection if a
  /// row has a component outside the span.
  Eigen::MatrixXd coordinates(const Eigen::MatrixXd& rows) const;

  bool contains(const Eigen::VectorXd& v) const;

 private:
  Eigen::MatrixXd basis_;
  double tol_;
};

/// sum_i weights[i] * x_i x_i^T for the rows x_i of `coords`.
Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& coords, const Eigen::VectorXd& weights);

/// y^T M^+ y for each row y of `tests`, with +inf for any row that has a
/// component in the null space of the PSD matrix M.
std::vector<double> pinv_quadratic_forms(const Eigen::MatrixXd& gram,
                                         const Eigen::MatrixXd& tests);

/// Least-squares solution M^+ b for PSD M.
Eigen::VectorXd pinv_solve(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs);

}  // namespace batchbai
