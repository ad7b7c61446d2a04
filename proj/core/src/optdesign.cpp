#include "batchbai/optdesign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "batchbai/errors.hpp"
#include "batchbai/linalg.hpp"

namespace batchbai {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSmoothing = 2.0;
// Iterations between relative-improvement checks.
constexpr std::size_t kWindow = 1000;

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void check_tests(const Eigen::MatrixXd& arms, const VectorSet& tests) {
  if (tests.rows() == 0) throw InvalidArgument("test vector set is empty");
  if (tests.cols() != arms.cols()) {
    throw InvalidArgument("test vectors and arms have different dimensions");
  }
}

double max_of(const std::vector<double>& values) {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

// Allocation quality, compared lexicographically: fewer uncovered test
// vectors first, then a smaller worst finite quadratic form.
struct Score {
  std::size_t uncovered = 0;
  double worst = 0.0;

  bool operator<(const Score& other) const {
    return uncovered != other.uncovered ? uncovered < other.uncovered : worst < other.worst;
  }
};

Score score_counts(const Eigen::MatrixXd& coords, const std::vector<std::uint64_t>& counts,
                   const Eigen::MatrixXd& test_coords) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(counts.size()));
  for (std::size_t i = 0; i < counts.size(); ++i) w[static_cast<Eigen::Index>(i)] = static_cast<double>(counts[i]);
  const auto values = pinv_quadratic_forms(weighted_gram(coords, w), test_coords);
  Score s;
  for (double v : values) {
    if (std::isinf(v)) {
      ++s.uncovered;
    } else {
      s.worst = std::max(s.worst, v);
    }
  }
  return s;
}

std::vector<std::uint64_t> hamilton(const std::vector<double>& lambda, std::uint64_t total) {
  const double sum = std::accumulate(lambda.begin(), lambda.end(), 0.0);
  std::vector<std::uint64_t> counts(lambda.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const double quota = static_cast<double>(total) * lambda[i] / sum;
    const double whole = std::floor(quota);
    counts[i] = static_cast<std::uint64_t>(whole);
    assigned += counts[i];
    remainders.emplace_back(quota - whole, i);
  }
  // Largest remainder first, lowest index on ties.
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < total; k = (k + 1) % remainders.size()) {
    ++counts[remainders[k].second];
    ++assigned;
  }
  // Floating error in the quotas can overshoot by a pull or two.
  for (std::size_t k = remainders.size(); assigned > total;) {
    k = (k == 0 ? remainders.size() : k) - 1;
    auto& c = counts[remainders[k].second];
    if (c > 0) {
      --c;
      --assigned;
    }
  }
  return counts;
}

}  // namespace

VectorSet difference_set(const VectorSet& points) {
  if (points.rows() < 2) throw DegenerateSet("difference set needs at least two points");
  std::vector<Eigen::VectorXd> out;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = 0; j < points.rows(); ++j) {
      if (i == j) continue;
      Eigen::VectorXd y = points.row(i) - points.row(j);
      if (y.isZero(0.0)) continue;  // x == x' as vectors
      const bool seen = std::any_of(out.begin(), out.end(), [&](const Eigen::VectorXd& z) { return z == y; });
      if (!seen) out.push_back(std::move(y));
    }
  }
  VectorSet result(static_cast<Eigen::Index>(out.size()), points.cols());
  for (std::size_t k = 0; k < out.size(); ++k) result.row(static_cast<Eigen::Index>(k)) = out[k];
  return result;
}

VectorSet pairwise_differences(const VectorSet& points) {
  if (points.rows() < 2) throw DegenerateSet("difference set needs at least two points");
  const Eigen::Index n = points.rows();
  VectorSet out(n * (n - 1) / 2, points.cols());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) out.row(k++) = points.row(i) - points.row(j);
  }
  return out;
}

VectorSet starred_difference_set(const VectorSet& points, std::size_t best_row) {
  if (points.rows() < 2) throw DegenerateSet("difference set needs at least two points");
  const auto best = static_cast<Eigen::Index>(best_row);
  if (best >= points.rows()) throw InvalidArm("best row out of range");
  VectorSet out(points.rows() - 1, points.cols());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    if (i != best) out.row(k++) = points.row(best) - points.row(i);
  }
  return out;
}

VectorSet select_rows(const Eigen::MatrixXd& arms, const std::vector<ArmId>& ids) {
  VectorSet out(static_cast<Eigen::Index>(ids.size()), arms.cols());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (ids[k] >= static_cast<std::size_t>(arms.rows())) {
      throw InvalidArm("arm " + std::to_string(ids[k]) + " out of range");
    }
    out.row(static_cast<Eigen::Index>(k)) = arms.row(static_cast<Eigen::Index>(ids[k]));
  }
  return out;
}

double design_value(const Eigen::MatrixXd& arms, const std::vector<double>& lambda,
                    const VectorSet& tests) {
  check_tests(arms, tests);
  const ArmSpan span(arms);
  const Eigen::MatrixXd coords = span.coordinates(arms);
  return max_of(pinv_quadratic_forms(weighted_gram(coords, to_eigen(lambda)),
                                     span.coordinates(tests)));
}

Design solve_design(const Eigen::MatrixXd& arms, const VectorSet& tests,
                    const DesignOptions& options) {
  check_tests(arms, tests);
  const ArmSpan span(arms);
  const Eigen::MatrixXd x = span.coordinates(arms);   // n x k
  const Eigen::MatrixXd y = span.coordinates(tests);  // m x k
  const Eigen::Index n = x.rows();

  Eigen::VectorXd lambda = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd best_lambda = lambda;
  double best_value = kInf;
  double best_lower = -kInf;
  double window_start = kInf;

  Design design;
  std::size_t it = 1;
  for (; it <= options.max_iters; ++it) {
    const Eigen::LLT<Eigen::MatrixXd> chol(weighted_gram(x, lambda));
    const Eigen::MatrixXd w = chol.solve(y.transpose());  // k x m
    const Eigen::VectorXd values = (y.transpose().array() * w.array()).colwise().sum();
    const double value = values.maxCoeff();
    if (value < best_value) {
      best_value = value;
      best_lambda = lambda;
    }

    // The max over tests is nonsmooth, and plain FW on the single worst test
    // stalls a few percent above the optimum. Instead linearize a log-sum-exp
    // smoothing whose temperature sharpens as sqrt(k).
    const double temperature = kSmoothing * std::sqrt(static_cast<double>(it));
    Eigen::ArrayXd soft = (temperature * (values.array() / value - 1.0)).exp();
    soft /= soft.sum();
    const Eigen::MatrixXd m = y.transpose() * (y.array().colwise() * soft).matrix();  // k x k
    const Eigen::MatrixXd a_inv_m = chol.solve(m);
    const Eigen::MatrixXd b = chol.solve(a_inv_m.transpose());  // A^-1 M A^-1
    const Eigen::VectorXd grad = ((x * b).array() * x.array()).rowwise().sum();
    Eigen::Index vertex = 0;
    const double top = grad.maxCoeff(&vertex);

    // M is a mixture of test outer products, so by convexity of tr(A^-1 M)
    //   min f >= 2 tr(A^-1 M) - max_x x^T A^-1 M A^-1 x.
    best_lower = std::max(best_lower, 2.0 * a_inv_m.trace() - top);
    if ((best_value - best_lower) <= options.tol * best_value) break;
    if (it % kWindow == 0) {
      if (window_start - best_value <= options.tol * best_value) break;
      window_start = best_value;
    }

    const double step = 2.0 / (static_cast<double>(it) + 2.0);
    lambda *= (1.0 - step);
    lambda[vertex] += step;
  }

  design.iterations = std::min(it, options.max_iters);
  design.rho = best_value;
  design.gap_certificate = std::max(0.0, (best_value - best_lower) / best_value);
  design.lambda.assign(best_lambda.data(), best_lambda.data() + n);
  return design;
}

double allocation_value(const Eigen::MatrixXd& arms, const std::vector<std::uint64_t>& counts,
                        const VectorSet& tests) {
  check_tests(arms, tests);
  if (counts.size() != static_cast<std::size_t>(arms.rows())) {
    throw InvalidArgument("one count per arm expected");
  }
  const ArmSpan span(arms);
  const Score s = score_counts(span.coordinates(arms), counts, span.coordinates(tests));
  return s.uncovered ? kInf : s.worst;
}

Allocation round_design(const std::vector<double>& lambda, std::uint64_t total,
                        const Eigen::MatrixXd& arms, const VectorSet& tests) {
  check_tests(arms, tests);
  if (lambda.size() != static_cast<std::size_t>(arms.rows())) {
    throw InvalidArgument("one weight per arm expected");
  }
  double mass = 0.0;
  for (double l : lambda) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw InvalidArgument("design weights must be nonnegative");
    mass += l;
  }
  if (!(mass > 0.0)) throw InvalidArgument("design weights sum to zero");
  if (total <= static_cast<std::uint64_t>(arms.cols())) {
    throw InsufficientBudget("rounding needs more pulls than the dimension (" +
                             std::to_string(total) + " <= " + std::to_string(arms.cols()) + ")");
  }

  const ArmSpan span(arms);
  const Eigen::MatrixXd coords = span.coordinates(arms);
  const Eigen::MatrixXd test_coords = span.coordinates(tests);
  const double target = 2.0 / static_cast<double>(total) *
                        max_of(pinv_quadratic_forms(weighted_gram(coords, to_eigen(lambda) / mass), test_coords));

  Allocation alloc{hamilton(lambda, total), total};
  Score current = score_counts(coords, alloc.counts, test_coords);
  const auto satisfied = [&](const Score& s) {
    return s.uncovered == 0 && s.worst <= target * (1.0 + 1e-12);
  };

  // Greedy repair: give one pull to the arm that helps most, then take one
  // from the arm whose loss hurts least.
  for (std::uint64_t moves = 0; !satisfied(current) && moves < total; ++moves) {
    std::size_t recipient = 0;
    Score after_add{std::numeric_limits<std::size_t>::max(), kInf};
    for (std::size_t i = 0; i < alloc.counts.size(); ++i) {
      ++alloc.counts[i];
      const Score s = score_counts(coords, alloc.counts, test_coords);
      --alloc.counts[i];
      if (s < after_add) {
        after_add = s;
        recipient = i;
      }
    }
    ++alloc.counts[recipient];
    std::size_t donor = recipient;
    Score after_move{std::numeric_limits<std::size_t>::max(), kInf};
    for (std::size_t i = 0; i < alloc.counts.size(); ++i) {
      if (i == recipient || alloc.counts[i] == 0) continue;
      --alloc.counts[i];
      const Score s = score_counts(coords, alloc.counts, test_coords);
      ++alloc.counts[i];
      if (s < after_move) {
        after_move = s;
        donor = i;
      }
    }
    if (donor == recipient || !(after_move < current)) {
      --alloc.counts[recipient];
      break;
    }
    --alloc.counts[donor];
    current = after_move;
  }

  if (!satisfied(current)) {
    throw RoundingFailure("allocation of " + std::to_string(total) +
                          " pulls misses the factor-2 design guarantee");
  }
  return alloc;
}

double psi_star(const LinearInstance& instance, const DesignOptions& options) {
  const auto gaps = instance.gaps();
  const ArmId best = instance.best_arm();
  const Eigen::MatrixXd& arms = instance.arms();
  VectorSet tests(arms.rows() - 1, arms.cols());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < arms.rows(); ++i) {
    if (static_cast<ArmId>(i) == best) continue;
    const double gap = gaps[static_cast<std::size_t>(i)];
    if (!(gap > 0.0)) throw NonUniqueBest("psi_star needs strictly positive gaps");
    tests.row(k++) = (arms.row(i) - arms.row(static_cast<Eigen::Index>(best))) / gap;
  }
  return solve_design(arms, tests, options).rho;
}

}  // namespace batchbai
