#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gpbo/kernel.hpp"
#include "gpbo/rng.hpp"

namespace gpbo {

/// Immutable fitted Gaussian process. Inputs are expected on unit-cube scale
/// and targets normalized when used inside the optimization loop, but the
/// model itself is agnostic. `chol` is the lower Cholesky factor of
/// K = K_ff + (noise_variance + jitter) I and `alpha` solves K alpha = y.
struct GpModel {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  Kernel kernel;
  double noise_variance = 0.0;
  Eigen::MatrixXd chol;
  Eigen::VectorXd alpha;
  double jitter = 0.0;

  int size() const { return static_cast<int>(X.rows()); }
  int dimension() const { return static_cast<int>(X.cols()); }
};

struct Prediction {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;
};

/// One draw of the hyperparameter posterior, on log scale.
struct HyperparameterSample {
  double log_signal_variance = 0.0;
  Eigen::VectorXd log_lengthscales;
  double log_noise_variance = 0.0;
};

/// Build K, factorize with jitter escalation, cache alpha.
GpModel fit_gp(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Kernel& kernel,
               double noise_variance);

/// Predictive mean and variance at query rows. Variance is the latent one,
/// clamped at zero; include_noise adds the noise variance.
Prediction predict(const GpModel& model, const Eigen::MatrixXd& Xq, bool include_noise = false);

struct PredictionGradient {
  Eigen::VectorXd dmean;
  Eigen::VectorXd dvariance;
};

/// Analytic gradients of the latent predictive mean and variance at x.
PredictionGradient predict_gradient(const GpModel& model, const Eigen::VectorXd& x);

double log_marginal_likelihood(const GpModel& model);

/// Gradient of the log marginal likelihood over the log-hyperparameters,
/// ordered (log signal variance, log lengthscale_1..d, log noise variance).
Eigen::VectorXd lml_gradient(const GpModel& model);

/// Log-parameter vector layout shared by the trainer and the HMC sampler.
Eigen::VectorXd pack_log_params(const Kernel& kernel, double noise_variance);
GpModel model_from_log_params(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                              KernelFamily family, const Eigen::VectorXd& log_params);
HyperparameterSample sample_from_log_params(const Eigen::VectorXd& log_params);
Eigen::VectorXd log_params_from_sample(const HyperparameterSample& sample);

/// Search bounds for the log-parameters, assuming unit-scaled inputs and
/// normalized targets.
void hyperparameter_log_bounds(int dimension, Eigen::VectorXd& lower, Eigen::VectorXd& upper);

/// Heuristic initial log-parameters (lengthscale 0.5, unit signal, small noise).
Eigen::VectorXd heuristic_log_params(int dimension);

/// Maximize the log marginal likelihood over bounded log-parameters with
/// multi-start projected gradient ascent; deterministic under a fixed seed.
GpModel optimize_hyperparameters(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                 KernelFamily family, int restarts, Rng& rng);

struct HmcConfig {
  int n_samples = 100;
  double step_size = 0.05;
  int leapfrog_steps = 20;
  int burn_in = 100;
  int thin = 2;
};

/// Hamiltonian Monte Carlo over the log-hyperparameter posterior (marginal
/// likelihood times independent standard normal priors on each log-parameter).
std::vector<HyperparameterSample> hmc_sample(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                             KernelFamily family, const HmcConfig& config, Rng& rng);

}  // namespace gpbo
