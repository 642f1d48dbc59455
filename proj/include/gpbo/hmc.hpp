#pragma once

#include <functional>

#include <Eigen/Dense>

#include "gpbo/gp.hpp"
#include "gpbo/rng.hpp"

namespace gpbo {

/// Unnormalized log density with gradient. Non-finite values outside the
/// support are fine (proposals there are rejected); the start point must be
/// finite.
struct HmcTarget {
  std::function<double(const Eigen::VectorXd&)> log_density;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
};

struct HmcResult {
  Eigen::MatrixXd samples;  // kept draws, row-wise
  double acceptance_rate = 0.0;
  double max_abs_energy_error = 0.0;  // max |Delta H| over finite trajectories
};

/// Leapfrog HMC with Metropolis correction. Runs burn_in + n_samples * thin
/// transitions and keeps every thin-th state after burn-in.
HmcResult hmc_run(const HmcTarget& target, const Eigen::VectorXd& q0, const HmcConfig& config,
                  Rng& rng);

/// Standard normal in `dimension` dimensions; the sampler's test target.
HmcTarget standard_gaussian_target(int dimension);

}  // namespace gpbo
