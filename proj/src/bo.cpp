#include "gpbo/bo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "gpbo/design.hpp"

namespace gpbo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_single_objective_kind(AcquisitionKind kind) {
  return kind == AcquisitionKind::EI || kind == AcquisitionKind::PoI ||
         kind == AcquisitionKind::LCB || kind == AcquisitionKind::MES ||
         kind == AcquisitionKind::PoF;
}

std::string point_to_string(const Eigen::VectorXd& x) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

// Everything below works in the internal convention: unit-cube inputs,
// minimized objectives.
struct LoopState {
  Eigen::MatrixXd U;     // unit-cube inputs
  Eigen::MatrixXd Yint;  // internal (minimization-sense) objective values
  Eigen::MatrixXd Yraw;  // user-sense objective values
  Eigen::MatrixXd C;     // constraint values

  void reserve(int total, int d, int m, int q) {
    U.resize(total, d);
    Yint.resize(total, m);
    Yraw.resize(total, m);
    C.resize(total, q);
    rows = 0;
  }

  void append(const Eigen::VectorXd& u, const Eigen::VectorXd& y_int, const Eigen::VectorXd& y_raw,
              const Eigen::VectorXd& c) {
    U.row(rows) = u.transpose();
    Yint.row(rows) = y_int.transpose();
    Yraw.row(rows) = y_raw.transpose();
    C.row(rows) = c.transpose();
    ++rows;
  }

  int rows = 0;
};

struct FittedOutput {
  GpModel point_model;                      // fit at the optimized hyperparameters
  std::vector<GpModel> sample_models;       // one per HMC sample (empty without HMC)
  std::vector<HyperparameterSample> samples;
};

// Per-output surrogate refit on normalized targets.
FittedOutput fit_output(const Eigen::MatrixXd& U, const Eigen::VectorXd& y_norm,
                        const BoConfig& config, Rng rng) {
  FittedOutput out;
  if (config.hmc) {
    Rng hmc_rng = rng.child(1);
    out.samples = hmc_sample(U, y_norm, config.kernel, *config.hmc, hmc_rng);
    out.sample_models.reserve(out.samples.size());
    for (const auto& s : out.samples) {
      out.sample_models.push_back(
          model_from_log_params(U, y_norm, config.kernel, log_params_from_sample(s)));
    }
    // Representative point model for bookkeeping: best-LML sample.
    std::size_t best = 0;
    double best_lml = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.sample_models.size(); ++i) {
      const double lml = log_marginal_likelihood(out.sample_models[i]);
      if (lml > best_lml) {
        best_lml = lml;
        best = i;
      }
    }
    out.point_model = out.sample_models[best];
  } else {
    Rng opt_rng = rng.child(2);
    out.point_model = optimize_hyperparameters(U, y_norm, config.kernel, config.restarts, opt_rng);
  }
  return out;
}

// Raw-scale predictive distribution of one output at a unit-cube point.
struct RawPrediction {
  double mean = 0.0;
  double variance = 0.0;
};

RawPrediction predict_raw(const GpModel& model, const DataScaler& scaler, int col,
                          const Eigen::VectorXd& u) {
  const Prediction p = predict(model, u.transpose(), false);
  return {scaler.denormalize_mean(p.mean[0], col), scaler.denormalize_variance(p.variance[0], col)};
}

struct HvPoiSupport {
  ParetoFront front;        // observed internal front clipped to the reference box
  CellDecomposition cells;  // non-dominated region of [ideal, reference]
  Eigen::VectorXd reference;
};

// Reference defaults to the observed anti-ideal plus a 10% margin, the ideal
// to the observed best minus the same margin; both overridable.
HvPoiSupport build_hvpoi_support(const Eigen::MatrixXd& Yint, const AcquisitionSpec& spec) {
  const Eigen::Index m = Yint.cols();
  const Eigen::VectorXd col_min = Yint.colwise().minCoeff();
  const Eigen::VectorXd col_max = Yint.colwise().maxCoeff();
  Eigen::VectorXd margin(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    margin[j] = std::max(0.1 * (col_max[j] - col_min[j]), 1e-6 * std::max(1.0, std::abs(col_min[j])));
  }

  HvPoiSupport support;
  support.reference = spec.reference ? *spec.reference : Eigen::VectorXd(col_max + margin);

  const ParetoFront observed = pareto_front(Yint);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < observed.points.rows(); ++i) {
    if ((observed.points.row(i).transpose().array() < support.reference.array()).all()) kept.push_back(i);
  }
  support.front.points.resize(static_cast<Eigen::Index>(kept.size()), m);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    support.front.points.row(static_cast<Eigen::Index>(i)) = observed.points.row(kept[i]);
  }

  Eigen::VectorXd ideal = spec.ideal ? *spec.ideal : Eigen::VectorXd(col_min - margin);
  if (support.front.size() > 0) {
    // The decomposition needs ideal strictly below every front point.
    const Eigen::VectorXd front_min = support.front.points.colwise().minCoeff();
    for (Eigen::Index j = 0; j < m; ++j) {
      const double cap = front_min[j] - 1e-9 * std::max(1.0, std::abs(front_min[j]));
      ideal[j] = std::min(ideal[j], cap);
    }
    support.cells = cell_decomposition(support.front, support.reference, ideal);
  } else {
    // Nothing observed inside the reference box yet: the whole box improves.
    support.cells.lower = ideal.transpose();
    support.cells.upper = support.reference.transpose();
    support.cells.reference = support.reference;
    support.cells.ideal = ideal;
    support.front.points.resize(0, m);
  }
  return support;
}

double feasible_front_hypervolume(const Eigen::MatrixXd& Yint, const std::vector<bool>& feasible,
                                  const Eigen::VectorXd& reference) {
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < Yint.rows(); ++i) {
    if (feasible[static_cast<std::size_t>(i)]) rows.push_back(i);
  }
  if (rows.empty()) return 0.0;
  Eigen::MatrixXd feasible_Y(static_cast<Eigen::Index>(rows.size()), Yint.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) feasible_Y.row(static_cast<Eigen::Index>(i)) = Yint.row(rows[i]);
  const ParetoFront front = pareto_front(feasible_Y);
  // Tolerant route: points outside the reference box contribute nothing.
  return hypervolume_grid(front, reference);
}

}  // namespace

std::string to_string(Phase phase) { return phase == Phase::Init ? "init" : "bo"; }

DataScaler DataScaler::fit(const Eigen::MatrixXd& Y) {
  DataScaler scaler;
  scaler.output_means = Y.colwise().mean();
  scaler.output_stds.resize(Y.cols());
  for (Eigen::Index j = 0; j < Y.cols(); ++j) {
    const double var = (Y.col(j).array() - scaler.output_means[j]).square().mean();
    scaler.output_stds[j] = std::max(std::sqrt(var), kStdFloor);
  }
  return scaler;
}

Eigen::MatrixXd DataScaler::normalize(const Eigen::MatrixXd& Y) const {
  if (Y.cols() != output_means.size()) throw DimensionError("DataScaler::normalize: column count mismatch");
  return (Y.rowwise() - output_means.transpose()).array().rowwise() /
         output_stds.transpose().array();
}

Eigen::MatrixXd DataScaler::denormalize(const Eigen::MatrixXd& Y) const {
  if (Y.cols() != output_means.size()) throw DimensionError("DataScaler::denormalize: column count mismatch");
  return (Y.array().rowwise() * output_stds.transpose().array()).matrix().rowwise() +
         output_means.transpose();
}

BoHistory bayesian_optimize(const Objective& objective, const Domain& domain, const BoConfig& config) {
  const int d = domain.dimension();
  const int m = objective.n_objectives;
  const int q = objective.n_constraints;

  if (m < 1) throw ConfigurationError("bayesian_optimize: needs at least one objective");
  if (q < 0) throw ConfigurationError("bayesian_optimize: negative constraint count");
  if (config.budget < 0) throw ConfigurationError("bayesian_optimize: budget must be >= 0");
  if (config.initial_design_size < 1) {
    throw ConfigurationError("bayesian_optimize: initial design needs at least one point");
  }
  if (!objective.senses.empty() && static_cast<int>(objective.senses.size()) != m) {
    throw ConfigurationError("bayesian_optimize: sense list length does not match objective count");
  }
  if (is_single_objective_kind(config.acquisition.kind) && m != 1) {
    throw ConfigurationError("bayesian_optimize: acquisition '" + to_string(config.acquisition.kind) +
                             "' handles exactly one objective");
  }
  if (config.acquisition.kind == AcquisitionKind::HvPoI && (m < 2 || m > 3)) {
    throw ConfigurationError("bayesian_optimize: hvpoi supports two or three objectives");
  }

  const double threshold = config.acquisition.pof_threshold;
  Rng master(config.seed);

  BoHistory history;
  history.seed = config.seed;
  history.config = config;
  history.senses.resize(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) history.senses[static_cast<std::size_t>(j)] = objective.sense(j);

  const int total = config.initial_design_size + config.budget;
  LoopState state;
  state.reserve(total, d, m, q);
  std::vector<bool> feasible;

  // Fixed reference for the history metric; adaptive HvPoI references are
  // recomputed per iteration inside the acquisition instead.
  const bool multi = m >= 2;
  std::optional<Eigen::VectorXd> metric_reference;
  if (multi && config.acquisition.reference) metric_reference = *config.acquisition.reference;

  auto finalize_history = [&]() {
    history.X.resize(state.rows, d);
    for (int i = 0; i < state.rows; ++i) {
      history.X.row(i) = domain.from_unit(state.U.row(i).transpose()).transpose();
    }
    history.Y = state.Yraw.topRows(state.rows);
    history.C = state.C.topRows(state.rows);
  };

  auto metric_so_far = [&]() -> double {
    if (!multi) {
      double best = kNaN;
      double best_internal = std::numeric_limits<double>::infinity();
      for (int i = 0; i < state.rows; ++i) {
        if (!feasible[static_cast<std::size_t>(i)]) continue;
        if (state.Yint(i, 0) < best_internal) {
          best_internal = state.Yint(i, 0);
          best = state.Yraw(i, 0);
        }
      }
      return best;
    }
    Eigen::VectorXd reference;
    if (metric_reference) {
      reference = *metric_reference;
    } else {
      reference = build_hvpoi_support(state.Yint.topRows(state.rows), config.acquisition).reference;
    }
    return feasible_front_hypervolume(state.Yint.topRows(state.rows), feasible, reference);
  };

  auto evaluate_at = [&](const Eigen::VectorXd& u, Phase phase, double model_lml,
                         std::chrono::steady_clock::time_point t0) {
    const Eigen::VectorXd x = domain.from_unit(u);
    ObjectiveResult result = objective.fn(x);
    if (result.objectives.size() != m || result.constraints.size() != q) {
      throw ConfigurationError("bayesian_optimize: objective output shape changed between calls");
    }

    if (!result.objectives.allFinite() || !result.constraints.allFinite()) {
      if (config.clip_nonfinite && state.rows > 0) {
        for (int j = 0; j < m; ++j) {
          if (!std::isfinite(result.objectives[j])) {
            const double worst_internal = state.Yint.col(j).head(state.rows).maxCoeff();
            const double sign = objective.sense(j) == Sense::Maximize ? -1.0 : 1.0;
            result.objectives[j] = sign * worst_internal;
          }
        }
        for (int j = 0; j < q; ++j) {
          if (!std::isfinite(result.constraints[j])) {
            result.constraints[j] = state.C.col(j).head(state.rows).maxCoeff();
          }
        }
      } else {
        finalize_history();
        throw BoAbort("bayesian_optimize: non-finite objective value at x = " + point_to_string(x), x,
                      std::move(history));
      }
    }

    Eigen::VectorXd y_int = result.objectives;
    for (int j = 0; j < m; ++j) {
      if (objective.sense(j) == Sense::Maximize) y_int[j] = -y_int[j];
    }
    state.append(u, y_int, result.objectives, result.constraints);
    feasible.push_back(q == 0 || (result.constraints.array() <= threshold).all());

    IterationRecord record;
    record.iteration = state.rows - 1;
    record.phase = phase;
    record.x = x;
    record.y = result.objectives;
    record.c = result.constraints;
    record.metric = metric_so_far();
    record.model_lml = model_lml;
    record.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    history.records.push_back(std::move(record));
  };

  // Initial design.
  const Eigen::MatrixXd init_unit = design_to_unit(tplhd(config.initial_design_size, d));
  for (int i = 0; i < config.initial_design_size; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    evaluate_at(init_unit.row(i).transpose(), Phase::Init, kNaN, t0);
  }

  const Domain unit_domain = Domain::unit(d);

  for (int iter = 0; iter < config.budget; ++iter) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t iter_tag = 1000 + static_cast<std::uint64_t>(iter);
    Rng iter_rng = master.child(iter_tag);

    const Eigen::MatrixXd Yint = state.Yint.topRows(state.rows);
    const Eigen::MatrixXd Craw = state.C.topRows(state.rows);
    const Eigen::MatrixXd U = state.U.topRows(state.rows);

    const DataScaler obj_scaler = DataScaler::fit(Yint);
    const Eigen::MatrixXd Ynorm = obj_scaler.normalize(Yint);

    std::vector<FittedOutput> obj_models;
    double iteration_lml = 0.0;
    for (int j = 0; j < m; ++j) {
      obj_models.push_back(fit_output(U, Ynorm.col(j), config, iter_rng.child(10 + static_cast<std::uint64_t>(j))));
      iteration_lml += log_marginal_likelihood(obj_models.back().point_model);
    }

    DataScaler con_scaler;
    Eigen::MatrixXd Cnorm;
    std::vector<FittedOutput> con_models;
    if (q > 0) {
      con_scaler = DataScaler::fit(Craw);
      Cnorm = con_scaler.normalize(Craw);
      for (int j = 0; j < q; ++j) {
        con_models.push_back(
            fit_output(U, Cnorm.col(j), config, iter_rng.child(100 + static_cast<std::uint64_t>(j))));
        iteration_lml += log_marginal_likelihood(con_models.back().point_model);
      }
    }

    // Assemble the acquisition over unit-cube points.
    const AcquisitionSpec& spec = config.acquisition;
    const int n_hmc_models = config.hmc ? static_cast<int>(obj_models[0].sample_models.size()) : 0;

    // Hyperparameter-independent pieces, computed once per iteration.
    double f_best_norm = 0.0;
    if (!multi) f_best_norm = Ynorm.col(0).minCoeff();
    std::vector<Eigen::VectorXd> mes_samples;  // per model variant of output 0
    if (spec.kind == AcquisitionKind::MES) {
      const int n_variants = config.hmc ? static_cast<int>(obj_models[0].sample_models.size()) : 1;
      for (int v = 0; v < n_variants; ++v) {
        const GpModel& variant_model =
            config.hmc ? obj_models[0].sample_models[static_cast<std::size_t>(v)] : obj_models[0].point_model;
        Rng mes_rng = iter_rng.child(200 + static_cast<std::uint64_t>(v));
        mes_samples.push_back(sample_min_values(variant_model, unit_domain, spec.mes_samples,
                                                spec.mes_grid_size, mes_rng));
      }
    }
    std::optional<HvPoiSupport> hv_support;
    if (spec.kind == AcquisitionKind::HvPoI) hv_support = build_hvpoi_support(Yint, spec);

    const bool gradient_kind =
        spec.kind == AcquisitionKind::EI || spec.kind == AcquisitionKind::PoI ||
        spec.kind == AcquisitionKind::LCB || spec.kind == AcquisitionKind::PoF;

    // Score of one model variant (HMC sample index, or the point fit for -1).
    auto model_of = [&](const FittedOutput& output, int variant) -> const GpModel& {
      return variant < 0 ? output.point_model : output.sample_models[static_cast<std::size_t>(variant)];
    };

    auto variant_value = [&](const Eigen::VectorXd& u, int variant) -> double {
      double objective_score = 0.0;
      switch (spec.kind) {
        case AcquisitionKind::EI: {
          const Prediction p = predict(model_of(obj_models[0], variant), u.transpose(), false);
          objective_score = expected_improvement(p.mean[0], p.variance[0], f_best_norm);
          break;
        }
        case AcquisitionKind::PoI: {
          const Prediction p = predict(model_of(obj_models[0], variant), u.transpose(), false);
          objective_score = probability_of_improvement(p.mean[0], p.variance[0], f_best_norm);
          break;
        }
        case AcquisitionKind::LCB: {
          const Prediction p = predict(model_of(obj_models[0], variant), u.transpose(), false);
          objective_score = lower_confidence_bound(p.mean[0], p.variance[0], spec.beta);
          break;
        }
        case AcquisitionKind::PoF: {
          const RawPrediction p = predict_raw(model_of(obj_models[0], variant), obj_scaler, 0, u);
          objective_score = probability_of_feasibility(p.mean, p.variance, threshold);
          break;
        }
        case AcquisitionKind::MES: {
          const Prediction p = predict(model_of(obj_models[0], variant), u.transpose(), false);
          const auto& samples = mes_samples[variant < 0 ? 0 : static_cast<std::size_t>(variant)];
          objective_score = mes(p.mean[0], p.variance[0], samples);
          break;
        }
        case AcquisitionKind::HvPoI: {
          Eigen::VectorXd means(m), variances(m);
          for (int j = 0; j < m; ++j) {
            const RawPrediction p = predict_raw(model_of(obj_models[j], variant), obj_scaler, j, u);
            means[j] = p.mean;
            variances[j] = p.variance;
          }
          objective_score = hvpoi(means, variances, hv_support->front, hv_support->cells);
          break;
        }
      }
      std::vector<double> pofs;
      pofs.reserve(static_cast<std::size_t>(q));
      for (int j = 0; j < q; ++j) {
        const RawPrediction p = predict_raw(model_of(con_models[static_cast<std::size_t>(j)], variant),
                                            con_scaler, j, u);
        pofs.push_back(probability_of_feasibility(p.mean, p.variance, threshold));
      }
      return joint_acquisition(objective_score, pofs);
    };

    // x-gradient of one variant, for the analytic kinds.
    auto variant_gradient = [&](const Eigen::VectorXd& u, int variant) -> Eigen::VectorXd {
      const GpModel& model0 = model_of(obj_models[0], variant);
      const Prediction p = predict(model0, u.transpose(), false);
      const PredictionGradient g = predict_gradient(model0, u);

      AcquisitionPartials partials;
      double mu = p.mean[0];
      double var = p.variance[0];
      Eigen::VectorXd dmu = g.dmean;
      Eigen::VectorXd dvar = g.dvariance;
      switch (spec.kind) {
        case AcquisitionKind::EI: partials = expected_improvement_partials(mu, var, f_best_norm); break;
        case AcquisitionKind::PoI: partials = probability_of_improvement_partials(mu, var, f_best_norm); break;
        case AcquisitionKind::LCB: partials = lower_confidence_bound_partials(mu, var, spec.beta); break;
        case AcquisitionKind::PoF: {
          mu = obj_scaler.denormalize_mean(mu, 0);
          var = obj_scaler.denormalize_variance(var, 0);
          dmu *= obj_scaler.output_stds[0];
          dvar *= obj_scaler.output_stds[0] * obj_scaler.output_stds[0];
          partials = probability_of_feasibility_partials(mu, var, threshold);
          break;
        }
        default: throw ArgumentError("variant_gradient: acquisition has no analytic gradient");
      }
      const Eigen::VectorXd objective_grad = partials.d_mu * dmu + partials.d_variance * dvar;

      std::vector<double> pof_values(static_cast<std::size_t>(q));
      std::vector<Eigen::VectorXd> pof_grads(static_cast<std::size_t>(q));
      for (int j = 0; j < q; ++j) {
        const GpModel& cm = model_of(con_models[static_cast<std::size_t>(j)], variant);
        const Prediction cp = predict(cm, u.transpose(), false);
        const PredictionGradient cg = predict_gradient(cm, u);
        const double std_j = con_scaler.output_stds[j];
        const AcquisitionPartials cpart = probability_of_feasibility_partials(
            con_scaler.denormalize_mean(cp.mean[0], j), con_scaler.denormalize_variance(cp.variance[0], j),
            threshold);
        pof_values[static_cast<std::size_t>(j)] = cpart.value;
        pof_grads[static_cast<std::size_t>(j)] =
            cpart.d_mu * std_j * cg.dmean + cpart.d_variance * std_j * std_j * cg.dvariance;
      }
      return joint_acquisition_gradient(partials.value, objective_grad, pof_values, pof_grads);
    };

    ScoreFunction score;
    if (n_hmc_models > 0) {
      score.value = [&, n_hmc_models](const Eigen::VectorXd& u) {
        double total_score = 0.0;
        for (int v = 0; v < n_hmc_models; ++v) total_score += variant_value(u, v);
        return total_score / n_hmc_models;
      };
      if (gradient_kind) {
        score.gradient = [&, n_hmc_models](const Eigen::VectorXd& u) {
          Eigen::VectorXd grad = Eigen::VectorXd::Zero(d);
          for (int v = 0; v < n_hmc_models; ++v) grad += variant_gradient(u, v);
          return Eigen::VectorXd(grad / n_hmc_models);
        };
      }
    } else {
      score.value = [&](const Eigen::VectorXd& u) { return variant_value(u, -1); };
      if (gradient_kind) {
        score.gradient = [&](const Eigen::VectorXd& u) { return variant_gradient(u, -1); };
      }
    }

    // Warm starts: unit-cube inputs of the current feasible incumbent(s).
    std::vector<Eigen::VectorXd> warm_starts;
    if (!multi) {
      int best = -1;
      double best_internal = std::numeric_limits<double>::infinity();
      for (int i = 0; i < state.rows; ++i) {
        if (feasible[static_cast<std::size_t>(i)] && state.Yint(i, 0) < best_internal) {
          best_internal = state.Yint(i, 0);
          best = i;
        }
      }
      if (best >= 0) warm_starts.push_back(state.U.row(best).transpose());
    } else {
      Eigen::MatrixXd feasible_Y(state.rows, m);
      std::vector<int> row_map;
      int n_feasible = 0;
      for (int i = 0; i < state.rows; ++i) {
        if (feasible[static_cast<std::size_t>(i)]) {
          feasible_Y.row(n_feasible++) = state.Yint.row(i);
          row_map.push_back(i);
        }
      }
      if (n_feasible > 0) {
        const ParetoFront front = pareto_front(feasible_Y.topRows(n_feasible));
        for (int i = 0; i < n_feasible; ++i) {
          for (Eigen::Index k = 0; k < front.points.rows(); ++k) {
            if (front.points.row(k) == feasible_Y.row(i)) {
              warm_starts.push_back(state.U.row(row_map[static_cast<std::size_t>(i)]).transpose());
              break;
            }
          }
        }
      }
    }

    Rng opt_rng = iter_rng.child(300);
    const OptimizationResult proposal =
        optimize_acquisition(score, unit_domain, config.optimizer, opt_rng, warm_starts);

    evaluate_at(proposal.x, Phase::Bo, iteration_lml, t0);
  }

  finalize_history();
  return history;
}

Incumbent incumbent(const BoHistory& history, double constraint_threshold) {
  if (history.evaluations() < 1) throw ArgumentError("incumbent: empty history");
  const int m = static_cast<int>(history.Y.cols());
  const int q = static_cast<int>(history.C.cols());

  std::vector<int> feasible_rows;
  for (int i = 0; i < history.evaluations(); ++i) {
    if (q == 0 || (history.C.row(i).array() <= constraint_threshold).all()) feasible_rows.push_back(i);
  }

  Incumbent out;
  out.any_feasible = !feasible_rows.empty();
  if (!out.any_feasible) return out;

  auto internal_value = [&](int row, int col) {
    const double v = history.Y(row, col);
    return (col < static_cast<int>(history.senses.size()) &&
            history.senses[static_cast<std::size_t>(col)] == Sense::Maximize)
               ? -v
               : v;
  };

  if (m == 1) {
    int best = feasible_rows.front();
    for (int row : feasible_rows) {
      if (internal_value(row, 0) < internal_value(best, 0)) best = row;
    }
    out.best_index = best;
    out.best_x = history.X.row(best).transpose();
    out.best_value = history.Y(best, 0);
    return out;
  }

  Eigen::MatrixXd feasible_internal(static_cast<Eigen::Index>(feasible_rows.size()), m);
  for (std::size_t i = 0; i < feasible_rows.size(); ++i) {
    for (int j = 0; j < m; ++j) feasible_internal(static_cast<Eigen::Index>(i), j) = internal_value(feasible_rows[i], j);
  }
  const ParetoFront front_internal = pareto_front(feasible_internal);

  // Map front rows back to history rows (first match wins) and restore the
  // user sense for reporting.
  std::vector<int> front_rows;
  for (Eigen::Index k = 0; k < front_internal.points.rows(); ++k) {
    for (std::size_t i = 0; i < feasible_rows.size(); ++i) {
      if (front_internal.points.row(k) == feasible_internal.row(static_cast<Eigen::Index>(i))) {
        front_rows.push_back(feasible_rows[i]);
        break;
      }
    }
  }
  out.front.points.resize(static_cast<Eigen::Index>(front_rows.size()), m);
  out.front_inputs.resize(static_cast<Eigen::Index>(front_rows.size()), history.X.cols());
  for (std::size_t i = 0; i < front_rows.size(); ++i) {
    out.front.points.row(static_cast<Eigen::Index>(i)) = history.Y.row(front_rows[i]);
    out.front_inputs.row(static_cast<Eigen::Index>(i)) = history.X.row(front_rows[i]);
  }
  return out;
}

}  // namespace gpbo
