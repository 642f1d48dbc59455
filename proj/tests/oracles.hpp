#pragma once

// Independent reference implementations used to generate and check expected
// values. Everything here is deliberately brute-force and kept apart from the
// library code paths it validates.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "gpbo/design.hpp"
#include "gpbo/rng.hpp"

namespace oracles {

// Minimum pairwise Euclidean distance by exhaustive enumeration.
inline double brute_force_min_distance(const Eigen::MatrixXi& levels) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < levels.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < levels.rows(); ++j) {
      const double d = (levels.row(i) - levels.row(j)).cast<double>().norm();
      best = std::min(best, d);
    }
  }
  return best;
}

// Latin property: every column is a permutation of {1,...,n}.
inline bool is_latin(const gpbo::Design& design) {
  for (int c = 0; c < design.p; ++c) {
    std::vector<int> column(static_cast<std::size_t>(design.n));
    for (int r = 0; r < design.n; ++r) column[static_cast<std::size_t>(r)] = design.levels(r, c);
    std::sort(column.begin(), column.end());
    for (int r = 0; r < design.n; ++r) {
      if (column[static_cast<std::size_t>(r)] != r + 1) return false;
    }
  }
  return true;
}

// Non-dominated filter by all-pairs comparison (minimization).
inline std::vector<Eigen::VectorXd> brute_force_front(const Eigen::MatrixXd& Y) {
  std::vector<Eigen::VectorXd> rows;
  for (Eigen::Index i = 0; i < Y.rows(); ++i) rows.push_back(Y.row(i).transpose());
  std::vector<Eigen::VectorXd> front;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < rows.size() && keep; ++j) {
      if (i == j) continue;
      const bool weakly = (rows[j].array() <= rows[i].array()).all();
      if (weakly && rows[j] != rows[i]) keep = false;
      if (weakly && rows[j] == rows[i] && j < i) keep = false;  // collapse duplicates
    }
    if (keep) front.push_back(rows[i]);
  }
  return front;
}

// Monte Carlo hypervolume: fraction of uniform samples in [lo, reference]
// dominated by some front point, times the box volume.
inline double mc_hypervolume(const Eigen::MatrixXd& front, const Eigen::VectorXd& reference,
                             long n_samples, gpbo::Rng& rng) {
  const Eigen::Index m = reference.size();
  Eigen::VectorXd lo = reference;
  for (Eigen::Index i = 0; i < front.rows(); ++i) lo = lo.cwiseMin(front.row(i).transpose());
  double box = 1.0;
  for (Eigen::Index j = 0; j < m; ++j) box *= reference[j] - lo[j];
  long hits = 0;
  Eigen::VectorXd y(m);
  for (long s = 0; s < n_samples; ++s) {
    for (Eigen::Index j = 0; j < m; ++j) y[j] = rng.uniform(lo[j], reference[j]);
    for (Eigen::Index i = 0; i < front.rows(); ++i) {
      if ((front.row(i).transpose().array() <= y.array()).all()) {
        ++hits;
        break;
      }
    }
  }
  return box * static_cast<double>(hits) / static_cast<double>(n_samples);
}

// Monte Carlo E[max(f_best - Y, 0)] with Y ~ N(mu, sigma^2).
inline double mc_expected_improvement(double mu, double sigma, double f_best, long n_samples,
                                      gpbo::Rng& rng) {
  double total = 0.0;
  for (long s = 0; s < n_samples; ++s) {
    total += std::max(f_best - (mu + sigma * rng.normal()), 0.0);
  }
  return total / static_cast<double>(n_samples);
}

// Monte Carlo estimate of P(candidate draw lands in the non-dominated part
// of [ideal, reference]) under independent per-objective Gaussians.
inline double mc_nondominated_probability(const Eigen::VectorXd& means, const Eigen::VectorXd& sigmas,
                                          const Eigen::MatrixXd& front, const Eigen::VectorXd& ideal,
                                          const Eigen::VectorXd& reference, long n_samples,
                                          gpbo::Rng& rng) {
  const Eigen::Index m = means.size();
  long hits = 0;
  Eigen::VectorXd y(m);
  for (long s = 0; s < n_samples; ++s) {
    bool in_box = true;
    for (Eigen::Index j = 0; j < m; ++j) {
      y[j] = means[j] + sigmas[j] * rng.normal();
      if (y[j] < ideal[j] || y[j] > reference[j]) in_box = false;
    }
    if (!in_box) continue;
    bool dominated = false;
    for (Eigen::Index i = 0; i < front.rows() && !dominated; ++i) {
      if ((front.row(i).transpose().array() <= y.array()).all()) dominated = true;
    }
    if (!dominated) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n_samples);
}

// Central finite differences of a scalar function.
inline Eigen::VectorXd finite_difference_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                                  const Eigen::VectorXd& x, double h = 1e-5) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd hi = x, lo = x;
    hi[i] += h;
    lo[i] -= h;
    g[i] = (f(hi) - f(lo)) / (2.0 * h);
  }
  return g;
}

// Mixed absolute/relative agreement check for gradient comparisons.
inline bool gradients_match(const Eigen::VectorXd& analytic, const Eigen::VectorXd& numeric,
                            double tol) {
  for (Eigen::Index i = 0; i < analytic.size(); ++i) {
    const double scale = std::max({1.0, std::abs(analytic[i]), std::abs(numeric[i])});
    if (std::abs(analytic[i] - numeric[i]) > tol * scale) return false;
  }
  return true;
}

}  // namespace oracles
