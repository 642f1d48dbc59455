#include "gpbo/detail/lbfgs.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace gpbo::detail {

namespace {

constexpr int kMemory = 8;
constexpr double kArmijoC = 1e-4;

Eigen::VectorXd project(const Eigen::VectorXd& x, const Eigen::VectorXd& lo, const Eigen::VectorXd& up) {
  return x.cwiseMax(lo).cwiseMin(up);
}

// Gradient with ascent components blocked by active bounds zeroed out.
Eigen::VectorXd projected_gradient(const Eigen::VectorXd& x, const Eigen::VectorXd& g,
                                   const Eigen::VectorXd& lo, const Eigen::VectorXd& up) {
  Eigen::VectorXd pg = g;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if ((x[i] <= lo[i] && g[i] < 0.0) || (x[i] >= up[i] && g[i] > 0.0)) pg[i] = 0.0;
  }
  return pg;
}

}  // namespace

LbfgsResult bounded_lbfgs_maximize(const std::function<double(const Eigen::VectorXd&)>& value,
                                   const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& gradient,
                                   const Eigen::VectorXd& x0, const Eigen::VectorXd& lower,
                                   const Eigen::VectorXd& upper, int max_iters, double grad_tol) {
  // Internally minimizes F = -value with the standard two-loop recursion.
  Eigen::VectorXd x = project(x0, lower, upper);
  double f = value(x);
  Eigen::VectorXd g = gradient(x);

  std::deque<Eigen::VectorXd> s_hist, y_hist;
  std::deque<double> rho_hist;

  for (int iter = 0; iter < max_iters; ++iter) {
    if (!g.allFinite() || !std::isfinite(f)) break;
    const Eigen::VectorXd pg = projected_gradient(x, g, lower, upper);
    if (pg.norm() <= grad_tol) break;

    // Two-loop recursion on grad F = -g.
    Eigen::VectorXd dir = -g;
    std::vector<double> alpha_coef(s_hist.size());
    for (std::size_t i = s_hist.size(); i-- > 0;) {
      alpha_coef[i] = rho_hist[i] * s_hist[i].dot(dir);
      dir -= alpha_coef[i] * y_hist[i];
    }
    if (!s_hist.empty()) {
      const double gamma = s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
      dir *= gamma;
    }
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(dir);
      dir += (alpha_coef[i] - beta) * s_hist[i];
    }
    dir = -dir;  // back to ascent direction on `value`

    if (dir.dot(pg) <= 0.0) dir = pg;  // fall back to steepest ascent

    // Projected Armijo backtracking.
    double alpha = 1.0;
    bool accepted = false;
    Eigen::VectorXd x_new;
    double f_new = f;
    while (alpha >= 1e-16) {
      x_new = project(x + alpha * dir, lower, upper);
      const Eigen::VectorXd step = x_new - x;
      if (step.norm() == 0.0) break;
      f_new = value(x_new);
      if (std::isfinite(f_new) && f_new >= f + kArmijoC * g.dot(step)) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;

    const Eigen::VectorXd g_new = gradient(x_new);
    if (!g_new.allFinite()) {
      x = x_new;
      f = f_new;
      break;
    }
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y_f = -(g_new - g);  // grad F difference
    const double sy = s.dot(y_f);
    if (sy > 1e-10 * s.norm() * y_f.norm()) {
      s_hist.push_back(s);
      y_hist.push_back(y_f);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > kMemory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    const double moved = s.norm();
    x = x_new;
    f = f_new;
    g = g_new;
    if (moved < 1e-12) break;
  }
  return {x, f};
}

}  // namespace gpbo::detail
