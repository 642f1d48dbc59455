#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "gpbo/domain.hpp"
#include "gpbo/rng.hpp"

namespace gpbo {

/// Score to maximize over a box. The gradient member may be left empty; the
/// optimizer then falls back to derivative-free refinement. Values of -inf
/// mark invalid regions and are simply never chosen; NaN is an error.
struct ScoreFunction {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;

  bool has_gradient() const { return static_cast<bool>(gradient); }
};

struct OptimizerConfig {
  int n_candidates = 0;  // 0 = 200 per dimension
  int n_refine = 5;
  int max_local_iters = 100;
  double tol = 1e-6;
  bool use_gradients = true;
};

struct OptimizationResult {
  Eigen::VectorXd x;
  double score = 0.0;
};

/// Screen a deterministic space-filling candidate set (plus warm starts),
/// refine the best few locally, return the overall best. The result never
/// scores below the best screened candidate and always lies in the domain.
OptimizationResult optimize_acquisition(const ScoreFunction& score_fn, const Domain& domain,
                                        const OptimizerConfig& config, Rng& rng,
                                        const std::vector<Eigen::VectorXd>& warm_starts = {});

/// Bounded local ascent from x0: projected gradient with Armijo backtracking
/// when a gradient is available, compass search otherwise. Never returns a
/// worse point than x0.
OptimizationResult local_search(const ScoreFunction& score_fn, const Eigen::VectorXd& x0,
                                const Domain& domain, const OptimizerConfig& config);

}  // namespace gpbo
