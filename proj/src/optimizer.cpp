#include "gpbo/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gpbo/design.hpp"
#include "gpbo/errors.hpp"

namespace gpbo {

namespace {

constexpr double kArmijoC = 1e-4;

std::string point_to_string(const Eigen::VectorXd& x) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

double checked_value(const ScoreFunction& fn, const Eigen::VectorXd& x) {
  const double v = fn.value(x);
  if (std::isnan(v)) throw ScoringError("score function returned NaN at " + point_to_string(x), x);
  return v;
}

Eigen::VectorXd project(const Eigen::VectorXd& x, const Eigen::VectorXd& lo, const Eigen::VectorXd& up) {
  return x.cwiseMax(lo).cwiseMin(up);
}

OptimizationResult gradient_ascent(const ScoreFunction& fn, const Eigen::VectorXd& x0,
                                   const Eigen::VectorXd& lo, const Eigen::VectorXd& up,
                                   const OptimizerConfig& config) {
  Eigen::VectorXd x = x0;
  double fx = checked_value(fn, x);
  double alpha = 1.0;
  for (int iter = 0; iter < config.max_local_iters; ++iter) {
    Eigen::VectorXd g = fn.gradient(x);
    if (!g.allFinite()) {
      if (g.hasNaN()) throw ScoringError("score gradient returned NaN at " + point_to_string(x), x);
      break;
    }
    // Zero out ascent components blocked by an active bound.
    Eigen::VectorXd pg = g;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if ((x[i] <= lo[i] && g[i] < 0.0) || (x[i] >= up[i] && g[i] > 0.0)) pg[i] = 0.0;
    }
    if (pg.norm() < 1e-12) break;

    bool accepted = false;
    Eigen::VectorXd x_new;
    double f_new = fx;
    while (alpha >= 1e-18) {
      x_new = project(x + alpha * g, lo, up);
      const Eigen::VectorXd step = x_new - x;
      if (step.norm() == 0.0) {
        alpha *= 0.5;
        continue;
      }
      f_new = checked_value(fn, x_new);
      if (f_new >= fx + kArmijoC * g.dot(step)) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    const double moved = (x_new - x).norm();
    x = x_new;
    fx = f_new;
    alpha = std::min(alpha * 2.0, 1e6);
    if (moved < config.tol) break;
  }
  return {x, fx};
}

OptimizationResult compass_search(const ScoreFunction& fn, const Eigen::VectorXd& x0,
                                  const Eigen::VectorXd& lo, const Eigen::VectorXd& up,
                                  const OptimizerConfig& config) {
  const Eigen::Index d = x0.size();
  Eigen::VectorXd x = x0;
  double fx = checked_value(fn, x);
  Eigen::VectorXd width = up - lo;
  Eigen::VectorXd h = 0.25 * width;
  for (int iter = 0; iter < config.max_local_iters; ++iter) {
    double best_f = fx;
    Eigen::VectorXd best_x = x;
    for (Eigen::Index i = 0; i < d; ++i) {
      for (const double sign : {+1.0, -1.0}) {
        Eigen::VectorXd trial = x;
        trial[i] = std::clamp(trial[i] + sign * h[i], lo[i], up[i]);
        if (trial[i] == x[i]) continue;
        const double f_trial = checked_value(fn, trial);
        if (f_trial > best_f) {
          best_f = f_trial;
          best_x = trial;
        }
      }
    }
    if (best_f > fx) {
      x = best_x;
      fx = best_f;
    } else {
      h *= 0.5;
      if ((h.array() < config.tol * width.array()).all()) break;
    }
  }
  return {x, fx};
}

}  // namespace

OptimizationResult local_search(const ScoreFunction& score_fn, const Eigen::VectorXd& x0,
                                const Domain& domain, const OptimizerConfig& config) {
  if (x0.size() != domain.dimension()) throw DimensionError("local_search: start point has wrong length");
  if (!domain.contains(x0)) throw ArgumentError("local_search: start point outside the domain");
  const Eigen::VectorXd lo = domain.lower();
  const Eigen::VectorXd up = domain.upper();
  if (score_fn.has_gradient() && config.use_gradients) {
    return gradient_ascent(score_fn, x0, lo, up, config);
  }
  return compass_search(score_fn, x0, lo, up, config);
}

OptimizationResult optimize_acquisition(const ScoreFunction& score_fn, const Domain& domain,
                                        const OptimizerConfig& config, Rng& rng,
                                        const std::vector<Eigen::VectorXd>& warm_starts) {
  (void)rng;  // screening is deterministic; the seed only matters upstream
  const int d = domain.dimension();
  const int n_candidates = config.n_candidates > 0 ? config.n_candidates : 200 * d;
  if (config.n_refine < 1) throw ArgumentError("optimize_acquisition: n_refine must be >= 1");
  if (config.n_refine > n_candidates) {
    throw ArgumentError("optimize_acquisition: n_refine exceeds the candidate count");
  }

  const Eigen::VectorXd lo = domain.lower();
  const Eigen::VectorXd up = domain.upper();
  const Eigen::MatrixXd screened = scale_design(tplhd(n_candidates, d), domain);

  std::vector<Eigen::VectorXd> candidates;
  candidates.reserve(static_cast<std::size_t>(n_candidates) + warm_starts.size());
  for (int i = 0; i < n_candidates; ++i) candidates.push_back(screened.row(i).transpose());
  for (const auto& w : warm_starts) {
    if (w.size() != d) throw DimensionError("optimize_acquisition: warm start has wrong length");
    candidates.push_back(project(w, lo, up));
  }

  std::vector<double> scores(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) scores[i] = checked_value(score_fn, candidates[i]);

  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
  });

  const std::size_t n_refine = std::min<std::size_t>(static_cast<std::size_t>(config.n_refine), candidates.size());
  OptimizationResult best{candidates[order[0]], scores[order[0]]};
  for (std::size_t k = 0; k < n_refine; ++k) {
    const auto idx = order[k];
    const OptimizationResult refined = local_search(score_fn, candidates[idx], domain, config);
    if (refined.score > best.score) best = refined;
  }
  return best;
}

}  // namespace gpbo
