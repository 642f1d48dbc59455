#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gpbo/domain.hpp"
#include "gpbo/gp.hpp"
#include "gpbo/pareto.hpp"
#include "gpbo/rng.hpp"

namespace gpbo {

enum class AcquisitionKind { EI, PoI, LCB, MES, HvPoI, PoF };

AcquisitionKind acquisition_kind_from_string(const std::string& name);
std::string to_string(AcquisitionKind kind);

/// Declarative acquisition selection. Objectives are minimized internally;
/// every acquisition is maximized.
struct AcquisitionSpec {
  AcquisitionKind kind = AcquisitionKind::EI;
  double beta = 2.0;           // LCB only
  int mes_samples = 10;        // MES only
  int mes_grid_size = 500;     // MES only
  double pof_threshold = 0.0;  // feasible iff constraint <= threshold
  std::optional<Eigen::VectorXd> reference;  // HvPoI only
  std::optional<Eigen::VectorXd> ideal;      // HvPoI only
};

/// Below sigma = sqrt(variance) of 1e-10 every formula switches to its
/// deterministic limit; this avoids 0/0 without changing values noticeably.
inline constexpr double kDeterministicSigma = 1e-10;

double expected_improvement(double mu, double variance, double f_best);
double probability_of_improvement(double mu, double variance, double f_best);
double lower_confidence_bound(double mu, double variance, double beta);
double probability_of_feasibility(double mu, double variance, double threshold);

/// Value together with partial derivatives with respect to the predictive
/// mean and variance; the chain rule through predict_gradient turns these
/// into x-gradients.
struct AcquisitionPartials {
  double value = 0.0;
  double d_mu = 0.0;
  double d_variance = 0.0;
};

AcquisitionPartials expected_improvement_partials(double mu, double variance, double f_best);
AcquisitionPartials probability_of_improvement_partials(double mu, double variance, double f_best);
AcquisitionPartials lower_confidence_bound_partials(double mu, double variance, double beta);
AcquisitionPartials probability_of_feasibility_partials(double mu, double variance, double threshold);

/// Gumbel approximation of the distribution of the model's best reachable
/// value (on the negated-objective scale g = -f).
struct GumbelMinValueFit {
  Eigen::VectorXd mu_g;   // negated predictive means over the fit grid
  Eigen::VectorXd sigma;  // matching predictive standard deviations (floored)
  double location = 0.0;  // Gumbel a
  double scale = 0.0;     // Gumbel b
  double y25 = 0.0, y50 = 0.0, y75 = 0.0;

  /// Approximate CDF of the best value: prod_i Phi((y - mu_g_i)/sigma_i).
  double cdf(double y) const;
};

GumbelMinValueFit fit_min_value_gumbel(const GpModel& model, const Domain& domain, int grid_size,
                                       Rng& rng);

/// K draws of the minimum objective value, returned on the g = -f scale.
Eigen::VectorXd sample_min_values(const GpModel& model, const Domain& domain, int n_samples,
                                  int grid_size, Rng& rng);

/// Max-value entropy point score given min-value samples (g scale).
double mes(double mu, double variance, const Eigen::VectorXd& min_value_samples);

/// One summand of the MES estimate at standardized distance gamma.
double mes_term(double gamma);

/// Probability that one predictive draw lands in the non-dominated region.
double hvpoi_probability(const Eigen::VectorXd& means, const Eigen::VectorXd& variances,
                         const CellDecomposition& cells);

/// Hypervolume-based probability of improvement: exclusive hypervolume at the
/// predictive mean times the probability of improving the front.
double hvpoi(const Eigen::VectorXd& candidate_means, const Eigen::VectorXd& candidate_variances,
             const ParetoFront& front, const CellDecomposition& cells);

/// Product composition of an objective score with per-constraint
/// probabilities of feasibility.
double joint_acquisition(double objective_score, const std::vector<double>& pof_scores);

/// x-gradient of the product above, given each factor's value and x-gradient.
Eigen::VectorXd joint_acquisition_gradient(double objective_score,
                                           const Eigen::VectorXd& objective_gradient,
                                           const std::vector<double>& pof_scores,
                                           const std::vector<Eigen::VectorXd>& pof_gradients);

/// Arithmetic mean of an acquisition over hyperparameter posterior samples.
double marginalized_acquisition(const std::function<double(const HyperparameterSample&)>& base_eval,
                                const std::vector<HyperparameterSample>& samples);

}  // namespace gpbo
