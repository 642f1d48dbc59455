#include "gpbo/kernel.hpp"

#include <cmath>

#include "gpbo/errors.hpp"

namespace gpbo {

namespace {

constexpr double kSqrt5 = 2.2360679774997896964;

void check_dims(const Kernel& kernel, Eigen::Index d, const char* op) {
  if (kernel.lengthscales.size() != d) {
    throw DimensionError(std::string(op) + ": kernel has " + std::to_string(kernel.lengthscales.size()) +
                         " lengthscales, input dimension is " + std::to_string(d));
  }
}

double scaled_sq_distance(const Kernel& kernel, const Eigen::VectorXd& x, const Eigen::VectorXd& xp) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double diff = (x[i] - xp[i]) / kernel.lengthscales[i];
    s += diff * diff;
  }
  return s;
}

}  // namespace

Kernel Kernel::make(KernelFamily family, double signal_variance, Eigen::VectorXd lengthscales) {
  if (!(signal_variance > 0.0)) throw ArgumentError("Kernel: signal variance must be > 0");
  if (lengthscales.size() == 0) throw ArgumentError("Kernel: needs at least one lengthscale");
  if (!(lengthscales.array() > 0.0).all()) throw ArgumentError("Kernel: lengthscales must be > 0");
  return Kernel{family, signal_variance, std::move(lengthscales)};
}

double kernel_eval(const Kernel& kernel, const Eigen::VectorXd& x, const Eigen::VectorXd& xp) {
  if (x.size() != xp.size()) throw DimensionError("kernel_eval: argument lengths differ");
  check_dims(kernel, x.size(), "kernel_eval");
  const double r2 = scaled_sq_distance(kernel, x, xp);
  if (kernel.family == KernelFamily::SquaredExponential) {
    return kernel.signal_variance * std::exp(-0.5 * r2);
  }
  const double r = std::sqrt(r2);
  return kernel.signal_variance * (1.0 + kSqrt5 * r + 5.0 * r2 / 3.0) * std::exp(-kSqrt5 * r);
}

Eigen::MatrixXd kernel_matrix(const Kernel& kernel, const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  if (A.cols() != B.cols()) throw DimensionError("kernel_matrix: point sets have different dimensions");
  check_dims(kernel, A.cols(), "kernel_matrix");
  Eigen::MatrixXd K(A.rows(), B.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < B.rows(); ++j) {
      K(i, j) = kernel_eval(kernel, A.row(i).transpose(), B.row(j).transpose());
    }
  }
  return K;
}

Eigen::VectorXd kernel_gradient_x(const Kernel& kernel, const Eigen::VectorXd& x, const Eigen::VectorXd& xp) {
  if (x.size() != xp.size()) throw DimensionError("kernel_gradient_x: argument lengths differ");
  check_dims(kernel, x.size(), "kernel_gradient_x");
  const Eigen::Index d = x.size();
  Eigen::VectorXd grad(d);
  if (kernel.family == KernelFamily::SquaredExponential) {
    const double k = kernel_eval(kernel, x, xp);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double l2 = kernel.lengthscales[i] * kernel.lengthscales[i];
      grad[i] = -k * (x[i] - xp[i]) / l2;
    }
    return grad;
  }
  // Matern52: dk/dx_i = -(5/3) sigma_f^2 (1 + sqrt5 r) exp(-sqrt5 r) (x_i - x'_i)/l_i^2,
  // continuous through r = 0.
  const double r = std::sqrt(scaled_sq_distance(kernel, x, xp));
  const double common = -(5.0 / 3.0) * kernel.signal_variance * (1.0 + kSqrt5 * r) * std::exp(-kSqrt5 * r);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double l2 = kernel.lengthscales[i] * kernel.lengthscales[i];
    grad[i] = common * (x[i] - xp[i]) / l2;
  }
  return grad;
}

Eigen::MatrixXd kernel_matrix_dlog_lengthscale(const Kernel& kernel, const Eigen::MatrixXd& A, int dim) {
  check_dims(kernel, A.cols(), "kernel_matrix_dlog_lengthscale");
  if (dim < 0 || dim >= A.cols()) throw ArgumentError("kernel_matrix_dlog_lengthscale: bad dimension index");
  const Eigen::Index n = A.rows();
  const double l2 = kernel.lengthscales[dim] * kernel.lengthscales[dim];
  Eigen::MatrixXd dK(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    dK(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double diff2 = (A(i, dim) - A(j, dim)) * (A(i, dim) - A(j, dim)) / l2;
      double value;
      if (kernel.family == KernelFamily::SquaredExponential) {
        value = kernel_eval(kernel, A.row(i).transpose(), A.row(j).transpose()) * diff2;
      } else {
        const double r = std::sqrt(scaled_sq_distance(kernel, A.row(i).transpose(), A.row(j).transpose()));
        value = (5.0 / 3.0) * kernel.signal_variance * (1.0 + kSqrt5 * r) * std::exp(-kSqrt5 * r) * diff2;
      }
      dK(i, j) = value;
      dK(j, i) = value;
    }
  }
  return dK;
}

}  // namespace gpbo
