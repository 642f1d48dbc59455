#pragma once

#include <Eigen/Dense>

namespace gpbo {

enum class KernelFamily { SquaredExponential, Matern52 };

/// Stationary ARD kernel: signal variance plus one lengthscale per input
/// dimension. All parameters strictly positive.
struct Kernel {
  KernelFamily family = KernelFamily::Matern52;
  double signal_variance = 1.0;
  Eigen::VectorXd lengthscales;

  static Kernel make(KernelFamily family, double signal_variance, Eigen::VectorXd lengthscales);
};

/// k(x, x'); symmetric in its arguments.
double kernel_eval(const Kernel& kernel, const Eigen::VectorXd& x, const Eigen::VectorXd& xp);

/// Cross-covariance matrix between row-wise point sets A (m x d) and B (n x d).
Eigen::MatrixXd kernel_matrix(const Kernel& kernel, const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

/// d k(x, x') / d x.
Eigen::VectorXd kernel_gradient_x(const Kernel& kernel, const Eigen::VectorXd& x, const Eigen::VectorXd& xp);

/// d K(A, A) / d log(lengthscale_dim), elementwise.
Eigen::MatrixXd kernel_matrix_dlog_lengthscale(const Kernel& kernel, const Eigen::MatrixXd& A, int dim);

}  // namespace gpbo
