#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gpbo/acquisition.hpp"
#include "gpbo/domain.hpp"
#include "gpbo/errors.hpp"
#include "gpbo/gp.hpp"
#include "gpbo/optimizer.hpp"
#include "gpbo/pareto.hpp"

namespace gpbo {

/// Per-output-column standardization: (y - mean) / std with the population
/// standard deviation, floored so constant columns stay finite. Input scaling
/// is the domain's unit-cube transform.
struct DataScaler {
  static constexpr double kStdFloor = 1e-12;

  Eigen::VectorXd output_means;
  Eigen::VectorXd output_stds;

  static DataScaler fit(const Eigen::MatrixXd& Y);

  Eigen::MatrixXd normalize(const Eigen::MatrixXd& Y) const;
  Eigen::MatrixXd denormalize(const Eigen::MatrixXd& Y) const;

  /// Back-transforms for predictive distributions of column `col`.
  double denormalize_mean(double mu, int col) const { return mu * output_stds[col] + output_means[col]; }
  double denormalize_variance(double variance, int col) const {
    return variance * output_stds[col] * output_stds[col];
  }
};

enum class Sense { Minimize, Maximize };

struct ObjectiveResult {
  Eigen::VectorXd objectives;
  Eigen::VectorXd constraints;
};

/// Black-box evaluation target: m >= 1 objectives, q >= 0 constraint values
/// (feasible when <= the configured threshold). Senses default to minimize.
struct Objective {
  std::function<ObjectiveResult(const Eigen::VectorXd&)> fn;
  int n_objectives = 1;
  int n_constraints = 0;
  std::vector<Sense> senses;  // empty = minimize everything

  Sense sense(int output) const {
    return senses.empty() ? Sense::Minimize : senses[static_cast<std::size_t>(output)];
  }
};

struct BoConfig {
  int budget = 25;
  int initial_design_size = 10;
  AcquisitionSpec acquisition;
  std::optional<HmcConfig> hmc;
  OptimizerConfig optimizer;
  KernelFamily kernel = KernelFamily::Matern52;
  int restarts = 5;
  std::uint64_t seed = 0;
  bool clip_nonfinite = false;
};

enum class Phase { Init, Bo };

std::string to_string(Phase phase);

struct IterationRecord {
  int iteration = 0;  // evaluation index, contiguous from 0
  Phase phase = Phase::Init;
  Eigen::VectorXd x;  // raw input
  Eigen::VectorXd y;  // objectives as returned by the user
  Eigen::VectorXd c;  // constraint values
  double metric = 0.0;  // incumbent best so far, or feasible-front hypervolume
  double model_lml = 0.0;  // summed LML of the models behind this proposal (NaN for init)
  double elapsed_seconds = 0.0;
};

struct BoHistory {
  Eigen::MatrixXd X;  // raw inputs, row per evaluation
  Eigen::MatrixXd Y;  // user-sense objective values
  Eigen::MatrixXd C;  // constraint values
  std::vector<IterationRecord> records;
  std::vector<Sense> senses;
  std::uint64_t seed = 0;
  BoConfig config;

  int evaluations() const { return static_cast<int>(X.rows()); }
};

/// Objective evaluation produced a non-finite value; carries the partial
/// history so callers can persist what was already evaluated.
class BoAbort : public EvaluationError {
 public:
  BoAbort(const std::string& what, Eigen::VectorXd point, BoHistory history)
      : EvaluationError(what, std::move(point)), history_(std::move(history)) {}
  const BoHistory& partial_history() const { return history_; }

 private:
  BoHistory history_;
};

/// The sequential optimization loop: space-filling initial design, then
/// `budget` iterations of refit / acquisition maximization / evaluation.
/// Deterministic for a fixed config and seed.
BoHistory bayesian_optimize(const Objective& objective, const Domain& domain, const BoConfig& config);

struct Incumbent {
  bool any_feasible = false;
  // single-objective result
  int best_index = -1;
  Eigen::VectorXd best_x;
  double best_value = 0.0;  // user sense
  // multi-objective result (user sense)
  ParetoFront front;
  Eigen::MatrixXd front_inputs;
};

/// Best feasible point (single objective) or feasible Pareto front. A history
/// with no feasible rows yields any_feasible = false, not an error.
Incumbent incumbent(const BoHistory& history, double constraint_threshold);

}  // namespace gpbo
