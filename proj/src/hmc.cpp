#include "gpbo/hmc.hpp"

#include <cmath>
#include <limits>

#include "gpbo/errors.hpp"

namespace gpbo {

namespace {

double potential(const HmcTarget& target, const Eigen::VectorXd& q) {
  const double lp = target.log_density(q);
  return std::isfinite(lp) ? -lp : std::numeric_limits<double>::infinity();
}

}  // namespace

HmcResult hmc_run(const HmcTarget& target, const Eigen::VectorXd& q0, const HmcConfig& config,
                  Rng& rng) {
  if (!(config.step_size > 0.0)) throw ArgumentError("hmc_run: step size must be > 0");
  if (config.leapfrog_steps < 1) throw ArgumentError("hmc_run: needs at least one leapfrog step");
  if (config.n_samples < 1) throw ArgumentError("hmc_run: needs at least one sample");
  if (config.burn_in < 0 || config.thin < 1) throw ArgumentError("hmc_run: bad burn-in/thinning");

  const Eigen::Index dim = q0.size();
  Eigen::VectorXd q = q0;
  double U = potential(target, q);
  if (!std::isfinite(U)) throw InitializationError("hmc_run: non-finite target at the start point");

  HmcResult result;
  result.samples.resize(config.n_samples, dim);
  const long total = static_cast<long>(config.burn_in) + static_cast<long>(config.n_samples) * config.thin;
  long accepted = 0;
  int kept = 0;

  for (long t = 1; t <= total; ++t) {
    Eigen::VectorXd p(dim);
    for (Eigen::Index i = 0; i < dim; ++i) p[i] = rng.normal();
    const double H0 = U + 0.5 * p.squaredNorm();

    // Leapfrog: half momentum step, alternating full steps, final half step.
    Eigen::VectorXd q_new = q;
    Eigen::VectorXd g = target.gradient(q_new);
    bool diverged = !g.allFinite();
    if (!diverged) {
      p += 0.5 * config.step_size * g;
      for (int l = 0; l < config.leapfrog_steps && !diverged; ++l) {
        q_new += config.step_size * p;
        g = target.gradient(q_new);
        if (!g.allFinite()) {
          diverged = true;
          break;
        }
        p += (l + 1 < config.leapfrog_steps ? 1.0 : 0.5) * config.step_size * g;
      }
    }

    double H1 = std::numeric_limits<double>::infinity();
    double U_new = std::numeric_limits<double>::infinity();
    if (!diverged) {
      U_new = potential(target, q_new);
      if (std::isfinite(U_new)) {
        H1 = U_new + 0.5 * p.squaredNorm();
        result.max_abs_energy_error = std::max(result.max_abs_energy_error, std::abs(H1 - H0));
      }
    }

    const double u = rng.uniform_open();
    if (std::isfinite(H1) && std::log(u) < H0 - H1) {
      q = q_new;
      U = U_new;
      ++accepted;
    }
    if (t > config.burn_in && (t - config.burn_in) % config.thin == 0) {
      result.samples.row(kept++) = q.transpose();
    }
  }

  result.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(total);
  return result;
}

HmcTarget standard_gaussian_target(int dimension) {
  (void)dimension;  // the density is dimension-agnostic; kept for call-site clarity
  HmcTarget target;
  target.log_density = [](const Eigen::VectorXd& q) { return -0.5 * q.squaredNorm(); };
  target.gradient = [](const Eigen::VectorXd& q) { return Eigen::VectorXd(-q); };
  return target;
}

std::vector<HyperparameterSample> hmc_sample(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                             KernelFamily family, const HmcConfig& config, Rng& rng) {
  const int d = static_cast<int>(X.cols());

  // Factorization failures and exp-overflowed parameters (a wild leapfrog
  // excursion can underflow exp(q) to zero) both mean "no density here":
  // the proposal is rejected rather than aborting the chain.
  HmcTarget target;
  target.log_density = [&X, &y, family](const Eigen::VectorXd& q) {
    try {
      const GpModel model = model_from_log_params(X, y, family, q);
      return log_marginal_likelihood(model) - 0.5 * q.squaredNorm();
    } catch (const NotPositiveDefiniteError&) {
      return -std::numeric_limits<double>::infinity();
    } catch (const ArgumentError&) {
      return -std::numeric_limits<double>::infinity();
    }
  };
  target.gradient = [&X, &y, family, d](const Eigen::VectorXd& q) -> Eigen::VectorXd {
    try {
      const GpModel model = model_from_log_params(X, y, family, q);
      return lml_gradient(model) - q;
    } catch (const NotPositiveDefiniteError&) {
      return Eigen::VectorXd::Constant(d + 2, std::numeric_limits<double>::quiet_NaN());
    } catch (const ArgumentError&) {
      return Eigen::VectorXd::Constant(d + 2, std::numeric_limits<double>::quiet_NaN());
    }
  };

  const HmcResult run = hmc_run(target, heuristic_log_params(d), config, rng);
  std::vector<HyperparameterSample> samples;
  samples.reserve(static_cast<std::size_t>(run.samples.rows()));
  for (Eigen::Index i = 0; i < run.samples.rows(); ++i) {
    samples.push_back(sample_from_log_params(run.samples.row(i).transpose()));
  }
  return samples;
}

}  // namespace gpbo
