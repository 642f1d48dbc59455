#include "gpbo/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "gpbo/errors.hpp"
#include "gpbo/math.hpp"
#include "gpbo/detail/lbfgs.hpp"

namespace gpbo {

namespace {

void validate_data(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  if (X.rows() < 1) throw ArgumentError("fit_gp: needs at least one training point");
  if (X.rows() != y.size()) {
    throw DimensionError("fit_gp: X has " + std::to_string(X.rows()) + " rows, y has " +
                         std::to_string(y.size()) + " entries");
  }
  if (!X.allFinite() || !y.allFinite()) throw DataError("fit_gp: training data contains NaN/Inf");
}

}  // namespace

GpModel fit_gp(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Kernel& kernel,
               double noise_variance) {
  validate_data(X, y);
  if (kernel.lengthscales.size() != X.cols()) {
    throw DimensionError("fit_gp: kernel lengthscale count does not match input dimension");
  }
  if (!(kernel.signal_variance > 0.0) || !(kernel.lengthscales.array() > 0.0).all()) {
    throw ArgumentError("fit_gp: kernel parameters must be > 0");
  }
  if (noise_variance < 0.0 || !std::isfinite(noise_variance)) {
    throw ArgumentError("fit_gp: noise variance must be >= 0");
  }

  Eigen::MatrixXd K = kernel_matrix(kernel, X, X);
  K.diagonal().array() += noise_variance;

  // Jitter ladder: 0, then 1e-8 .. 1e-2 times the mean diagonal.
  const double mean_diag = K.diagonal().mean();
  double jitter = 0.0;
  double rung = 1e-8 * mean_diag;
  const double ceiling = 1e-2 * mean_diag;
  Eigen::LLT<Eigen::MatrixXd> llt;
  while (true) {
    Eigen::MatrixXd Kj = K;
    Kj.diagonal().array() += jitter;
    llt.compute(Kj);
    if (llt.info() == Eigen::Success) break;
    if (jitter == 0.0) {
      jitter = rung;
    } else {
      jitter *= 10.0;
    }
    if (jitter > ceiling) {
      throw NotPositiveDefiniteError("fit_gp: covariance not positive definite after jitter escalation");
    }
  }

  GpModel model;
  model.X = X;
  model.y = y;
  model.kernel = kernel;
  model.noise_variance = noise_variance;
  model.chol = llt.matrixL();
  model.alpha = llt.solve(y);
  model.jitter = jitter;
  return model;
}

Prediction predict(const GpModel& model, const Eigen::MatrixXd& Xq, bool include_noise) {
  if (Xq.cols() != model.dimension()) {
    throw DimensionError("predict: query dimension " + std::to_string(Xq.cols()) +
                         " does not match model dimension " + std::to_string(model.dimension()));
  }
  const Eigen::MatrixXd Kqf = kernel_matrix(model.kernel, Xq, model.X);
  Prediction out;
  out.mean = Kqf * model.alpha;
  const Eigen::MatrixXd V = model.chol.triangularView<Eigen::Lower>().solve(Kqf.transpose());
  out.variance.resize(Xq.rows());
  for (Eigen::Index i = 0; i < Xq.rows(); ++i) {
    double v = model.kernel.signal_variance - V.col(i).squaredNorm();
    if (v < 0.0) v = 0.0;
    if (include_noise) v += model.noise_variance;
    out.variance[i] = v;
  }
  return out;
}

PredictionGradient predict_gradient(const GpModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.dimension()) throw DimensionError("predict_gradient: query has wrong length");
  const Eigen::Index n = model.size();
  Eigen::VectorXd kq(n);
  for (Eigen::Index i = 0; i < n; ++i) kq[i] = kernel_eval(model.kernel, x, model.X.row(i).transpose());
  Eigen::VectorXd w = model.chol.triangularView<Eigen::Lower>().solve(kq);
  model.chol.transpose().triangularView<Eigen::Upper>().solveInPlace(w);  // w = K^-1 k_q

  PredictionGradient out;
  out.dmean = Eigen::VectorXd::Zero(x.size());
  out.dvariance = Eigen::VectorXd::Zero(x.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd dk = kernel_gradient_x(model.kernel, x, model.X.row(i).transpose());
    out.dmean += model.alpha[i] * dk;
    out.dvariance -= 2.0 * w[i] * dk;
  }
  return out;
}

double log_marginal_likelihood(const GpModel& model) {
  const double quad = -0.5 * model.y.dot(model.alpha);
  const double logdet = model.chol.diagonal().array().log().sum();
  return quad - logdet - 0.5 * model.size() * kLog2Pi;
}

Eigen::VectorXd lml_gradient(const GpModel& model) {
  const Eigen::Index n = model.size();
  const Eigen::Index d = model.dimension();

  // G = alpha alpha^T - K^-1; d LML / d theta = 1/2 tr(G dK/dtheta).
  Eigen::MatrixXd Kinv = Eigen::MatrixXd::Identity(n, n);
  model.chol.triangularView<Eigen::Lower>().solveInPlace(Kinv);
  model.chol.transpose().triangularView<Eigen::Upper>().solveInPlace(Kinv);
  const Eigen::MatrixXd G = model.alpha * model.alpha.transpose() - Kinv;

  Eigen::VectorXd grad(d + 2);
  const Eigen::MatrixXd Kff = kernel_matrix(model.kernel, model.X, model.X);
  grad[0] = 0.5 * G.cwiseProduct(Kff).sum();  // dK/dlog sigma_f^2 = K_ff
  for (Eigen::Index i = 0; i < d; ++i) {
    const Eigen::MatrixXd dK = kernel_matrix_dlog_lengthscale(model.kernel, model.X, static_cast<int>(i));
    grad[1 + i] = 0.5 * G.cwiseProduct(dK).sum();
  }
  grad[d + 1] = 0.5 * model.noise_variance * G.trace();  // dK/dlog sigma_n^2 = sigma_n^2 I
  return grad;
}

Eigen::VectorXd pack_log_params(const Kernel& kernel, double noise_variance) {
  Eigen::VectorXd q(kernel.lengthscales.size() + 2);
  q[0] = std::log(kernel.signal_variance);
  for (Eigen::Index i = 0; i < kernel.lengthscales.size(); ++i) q[1 + i] = std::log(kernel.lengthscales[i]);
  q[q.size() - 1] = std::log(noise_variance);
  return q;
}

GpModel model_from_log_params(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                              KernelFamily family, const Eigen::VectorXd& log_params) {
  const Eigen::Index d = X.cols();
  if (log_params.size() != d + 2) throw DimensionError("model_from_log_params: wrong parameter count");
  Eigen::VectorXd ls = log_params.segment(1, d).array().exp();
  const Kernel kernel = Kernel::make(family, std::exp(log_params[0]), std::move(ls));
  return fit_gp(X, y, kernel, std::exp(log_params[d + 1]));
}

HyperparameterSample sample_from_log_params(const Eigen::VectorXd& log_params) {
  HyperparameterSample s;
  s.log_signal_variance = log_params[0];
  s.log_lengthscales = log_params.segment(1, log_params.size() - 2);
  s.log_noise_variance = log_params[log_params.size() - 1];
  return s;
}

Eigen::VectorXd log_params_from_sample(const HyperparameterSample& sample) {
  Eigen::VectorXd q(sample.log_lengthscales.size() + 2);
  q[0] = sample.log_signal_variance;
  q.segment(1, sample.log_lengthscales.size()) = sample.log_lengthscales;
  q[q.size() - 1] = sample.log_noise_variance;
  return q;
}

void hyperparameter_log_bounds(int dimension, Eigen::VectorXd& lower, Eigen::VectorXd& upper) {
  lower.resize(dimension + 2);
  upper.resize(dimension + 2);
  lower[0] = std::log(1e-6);
  upper[0] = std::log(1e4);
  for (int i = 0; i < dimension; ++i) {
    lower[1 + i] = std::log(1e-3);
    upper[1 + i] = std::log(1e3);
  }
  lower[dimension + 1] = std::log(1e-8);
  upper[dimension + 1] = std::log(1e2);
}

Eigen::VectorXd heuristic_log_params(int dimension) {
  Eigen::VectorXd q(dimension + 2);
  q[0] = 0.0;  // signal variance 1
  for (int i = 0; i < dimension; ++i) q[1 + i] = std::log(0.5);
  q[dimension + 1] = std::log(1e-3);
  return q;
}

GpModel optimize_hyperparameters(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                 KernelFamily family, int restarts, Rng& rng) {
  validate_data(X, y);
  if (restarts < 1) throw ArgumentError("optimize_hyperparameters: restarts must be >= 1");
  const int d = static_cast<int>(X.cols());

  if (X.rows() == 1) {
    return model_from_log_params(X, y, family, heuristic_log_params(d));
  }

  Eigen::VectorXd lo, up;
  hyperparameter_log_bounds(d, lo, up);

  // Score closure with a one-entry model cache so value+gradient at the same
  // point cost a single factorization. Failed factorizations score -inf.
  struct Cache {
    Eigen::VectorXd q;
    GpModel model;
    bool valid = false;
  };
  auto cache = std::make_shared<Cache>();
  auto fit_at = [&, cache](const Eigen::VectorXd& q) -> const GpModel* {
    if (cache->valid && cache->q.size() == q.size() && cache->q == q) return &cache->model;
    try {
      cache->model = model_from_log_params(X, y, family, q);
    } catch (const NotPositiveDefiniteError&) {
      cache->valid = false;
      return nullptr;
    }
    cache->q = q;
    cache->valid = true;
    return &cache->model;
  };

  auto value = [fit_at](const Eigen::VectorXd& q) {
    const GpModel* m = fit_at(q);
    return m ? log_marginal_likelihood(*m) : -std::numeric_limits<double>::infinity();
  };
  auto gradient = [fit_at, d](const Eigen::VectorXd& q) {
    const GpModel* m = fit_at(q);
    return m ? lml_gradient(*m) : Eigen::VectorXd::Zero(d + 2).eval();
  };

  std::vector<Eigen::VectorXd> starts;
  starts.push_back(heuristic_log_params(d));
  for (int r = 1; r < restarts; ++r) {
    Eigen::VectorXd q(d + 2);
    for (int i = 0; i < d + 2; ++i) q[i] = rng.uniform(lo[i], up[i]);
    starts.push_back(q);
  }

  bool found = false;
  double best_lml = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_q;
  for (const auto& q0 : starts) {
    if (!std::isfinite(value(q0))) continue;
    const detail::LbfgsResult result = detail::bounded_lbfgs_maximize(value, gradient, q0, lo, up, 200, 1e-6);
    if (!std::isfinite(result.value)) continue;
    if (!found || result.value > best_lml) {
      found = true;
      best_lml = result.value;
      best_q = result.x;
    }
  }
  if (!found) {
    throw NotPositiveDefiniteError("optimize_hyperparameters: every restart failed factorization");
  }
  return model_from_log_params(X, y, family, best_q);
}

}  // namespace gpbo
