#pragma once

#include <functional>

#include <Eigen/Dense>

namespace gpbo::detail {

struct LbfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
};

/// Box-constrained maximization by limited-memory BFGS with gradient
/// projection and Armijo backtracking. -inf values mark infeasible points
/// and only ever cause the line search to backtrack. Internal building block
/// of the hyperparameter trainer.
LbfgsResult bounded_lbfgs_maximize(const std::function<double(const Eigen::VectorXd&)>& value,
                                   const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& gradient,
                                   const Eigen::VectorXd& x0, const Eigen::VectorXd& lower,
                                   const Eigen::VectorXd& upper, int max_iters, double grad_tol);

}  // namespace gpbo::detail
