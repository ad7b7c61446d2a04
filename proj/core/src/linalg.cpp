#include "batchbai/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "batchbai/errors.hpp"

namespace batchbai {
namespace {

constexpr double kNullRelTol = 1e-11;

}  // namespace

ArmSpan::ArmSpan(const Eigen::MatrixXd& arms, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(arms, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() ? sv[0] : 0.0;
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > rel_tol * top) ++rank;
  if (rank == 0) throw DegenerateSet("arms span the zero subspace");
  basis_ = svd.matrixV().leftCols(rank);
  tol_ = 1e-9 * std::max(1.0, arms.cwiseAbs().maxCoeff());
}

Eigen::MatrixXd ArmSpan::coordinates(const Eigen::MatrixXd& rows) const {
  Eigen::MatrixXd coords = rows * basis_;
  const Eigen::MatrixXd residual = rows - coords * basis_.transpose();
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    if (residual.row(i).norm() > tol_ * std::max(1.0, rows.row(i).norm())) {
      throw UnreachableDirection("test vector " + std::to_string(i) +
                                 " lies outside the span of the arms");
    }
  }
  return coords;
}

bool ArmSpan::contains(const Eigen::VectorXd& v) const {
  const Eigen::VectorXd residual = v - basis_ * (basis_.transpose() * v);
  return residual.norm() <= tol_ * std::max(1.0, v.norm());
}

Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& coords, const Eigen::VectorXd& weights) {
  return coords.transpose() * weights.asDiagonal() * coords;
}

std::vector<double> pinv_quadratic_forms(const Eigen::MatrixXd& gram,
                                         const Eigen::MatrixXd& tests) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::VectorXd& values = eig.eigenvalues();
  const double top = values.size() ? values.maxCoeff() : 0.0;
  const double floor = kNullRelTol * std::max(top, 0.0);
  const Eigen::MatrixXd z = tests * eig.eigenvectors();

  std::vector<double> out(static_cast<std::size_t>(tests.rows()), 0.0);
  for (Eigen::Index i = 0; i < tests.rows(); ++i) {
    const double scale = std::max(1.0, tests.row(i).norm());
    double q = 0.0;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
      if (values[k] > floor && values[k] > 0.0) {
        q += z(i, k) * z(i, k) / values[k];
      } else if (std::abs(z(i, k)) > 1e-9 * scale) {
        q = std::numeric_limits<double>::infinity();
        break;
      }
    }
    out[static_cast<std::size_t>(i)] = q;
  }
  return out;
}

Eigen::VectorXd pinv_solve(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::VectorXd& values = eig.eigenvalues();
  const double top = values.size() ? values.maxCoeff() : 0.0;
  const double floor = kNullRelTol * std::max(top, 0.0);
  Eigen::VectorXd z = eig.eigenvectors().transpose() * rhs;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    z[k] = (values[k] > floor && values[k] > 0.0) ? z[k] / values[k] : 0.0;
  }
  return eig.eigenvectors() * z;
}

}  // namespace batchbai
