#include "gpbo/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gpbo/errors.hpp"

namespace gpbo {

namespace {

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

void check_objective_count(Eigen::Index m, const char* op) {
  if (m < 2) throw ArgumentError(std::string(op) + ": needs at least two objectives");
  if (m > 3) throw ArgumentError(std::string(op) + ": supports at most three objectives");
}

// Non-dominated filter without the strict-dominance-of-reference requirement;
// points that fail it contribute nothing and are dropped.
std::vector<Eigen::VectorXd> clip_to_reference(const Eigen::MatrixXd& points,
                                               const Eigen::VectorXd& reference) {
  std::vector<Eigen::VectorXd> kept;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    if ((points.row(i).transpose().array() < reference.array()).all()) {
      kept.push_back(points.row(i).transpose());
    }
  }
  return kept;
}

// 2-objective staircase sweep over a non-dominated set sorted by the first
// objective.
double staircase_area(std::vector<Eigen::VectorXd> front, const Eigen::VectorXd& reference) {
  std::sort(front.begin(), front.end(), lex_less);
  double area = 0.0;
  for (std::size_t i = 0; i < front.size(); ++i) {
    const double next_f0 = i + 1 < front.size() ? front[i + 1][0] : reference[0];
    area += (next_f0 - front[i][0]) * (reference[1] - front[i][1]);
  }
  return area;
}

std::vector<std::vector<double>> grid_coordinates(const std::vector<Eigen::VectorXd>& points,
                                                  const Eigen::VectorXd& lower_bound,
                                                  const Eigen::VectorXd& reference) {
  const Eigen::Index m = reference.size();
  std::vector<std::vector<double>> coords(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) {
    auto& c = coords[static_cast<std::size_t>(j)];
    c.push_back(lower_bound[j]);
    c.push_back(reference[j]);
    for (const auto& p : points) c.push_back(p[j]);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  return coords;
}

// Dominated volume within [lower_bound, reference] by exhaustive cell
// classification: a cell is dominated iff its lower corner is weakly
// dominated by some point.
double grid_dominated_volume(const std::vector<Eigen::VectorXd>& points,
                             const Eigen::VectorXd& lower_bound, const Eigen::VectorXd& reference) {
  if (points.empty()) return 0.0;
  const Eigen::Index m = reference.size();
  const auto coords = grid_coordinates(points, lower_bound, reference);
  std::vector<std::size_t> cell_counts(static_cast<std::size_t>(m));
  std::size_t total = 1;
  for (Eigen::Index j = 0; j < m; ++j) {
    cell_counts[static_cast<std::size_t>(j)] = coords[static_cast<std::size_t>(j)].size() - 1;
    total *= cell_counts[static_cast<std::size_t>(j)];
  }
  double volume = 0.0;
  for (std::size_t cell = 0; cell < total; ++cell) {
    std::size_t rem = cell;
    double cell_volume = 1.0;
    bool dominated = false;
    Eigen::VectorXd corner(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& c = coords[static_cast<std::size_t>(j)];
      const std::size_t k = rem % cell_counts[static_cast<std::size_t>(j)];
      rem /= cell_counts[static_cast<std::size_t>(j)];
      corner[j] = c[k];
      cell_volume *= c[k + 1] - c[k];
    }
    for (const auto& p : points) {
      if ((p.array() <= corner.array()).all()) {
        dominated = true;
        break;
      }
    }
    if (dominated) volume += cell_volume;
  }
  return volume;
}

double dominated_volume(const Eigen::MatrixXd& points, const Eigen::VectorXd& reference) {
  auto kept = clip_to_reference(points, reference);
  if (kept.empty()) return 0.0;
  // Reduce to the non-dominated subset first; dominated points add nothing.
  std::vector<Eigen::VectorXd> front;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    bool dominated_or_dup = false;
    for (std::size_t j = 0; j < kept.size() && !dominated_or_dup; ++j) {
      if (i == j) continue;
      if ((kept[j].array() <= kept[i].array()).all()) {
        if (kept[j] != kept[i] || j < i) dominated_or_dup = true;
      }
    }
    if (!dominated_or_dup) front.push_back(kept[i]);
  }
  if (reference.size() == 2) return staircase_area(std::move(front), reference);
  Eigen::VectorXd lower_bound = front.front();
  for (const auto& p : front) lower_bound = lower_bound.cwiseMin(p);
  return grid_dominated_volume(front, lower_bound, reference);
}

}  // namespace

double CellDecomposition::total_volume() const {
  double v = 0.0;
  for (Eigen::Index i = 0; i < lower.rows(); ++i) v += (upper.row(i) - lower.row(i)).prod();
  return v;
}

bool dominates(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a.array() <= b.array()).all() && a != b;
}

ParetoFront pareto_front(const Eigen::MatrixXd& Y) {
  if (Y.rows() < 1) throw ArgumentError("pareto_front: needs at least one point");
  check_objective_count(Y.cols(), "pareto_front");
  if (!Y.allFinite()) throw DataError("pareto_front: objective values contain NaN/Inf");

  std::vector<Eigen::VectorXd> rows;
  for (Eigen::Index i = 0; i < Y.rows(); ++i) rows.push_back(Y.row(i).transpose());
  std::sort(rows.begin(), rows.end(), lex_less);
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  std::vector<Eigen::VectorXd> front;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < rows.size() && !dominated; ++j) {
      if (j != i && dominates(rows[j], rows[i])) dominated = true;
    }
    if (!dominated) front.push_back(rows[i]);
  }

  ParetoFront out;
  out.points.resize(static_cast<Eigen::Index>(front.size()), Y.cols());
  for (std::size_t i = 0; i < front.size(); ++i) out.points.row(static_cast<Eigen::Index>(i)) = front[i].transpose();
  return out;
}

double hypervolume(const ParetoFront& front, const Eigen::VectorXd& reference) {
  check_objective_count(reference.size(), "hypervolume");
  if (front.points.cols() != reference.size()) {
    throw DimensionError("hypervolume: front and reference dimensions differ");
  }
  for (Eigen::Index i = 0; i < front.points.rows(); ++i) {
    if (!(front.points.row(i).transpose().array() < reference.array()).all()) {
      throw ArgumentError("hypervolume: every front point must strictly dominate the reference");
    }
  }
  return dominated_volume(front.points, reference);
}

double hypervolume_grid(const ParetoFront& front, const Eigen::VectorXd& reference) {
  check_objective_count(reference.size(), "hypervolume_grid");
  std::vector<Eigen::VectorXd> points;
  for (Eigen::Index i = 0; i < front.points.rows(); ++i) points.push_back(front.points.row(i).transpose());
  Eigen::VectorXd lower_bound = reference;
  for (const auto& p : points) lower_bound = lower_bound.cwiseMin(p);
  return grid_dominated_volume(points, lower_bound, reference);
}

CellDecomposition cell_decomposition(const ParetoFront& front, const Eigen::VectorXd& reference,
                                     const Eigen::VectorXd& ideal) {
  const Eigen::Index m = reference.size();
  check_objective_count(m, "cell_decomposition");
  if (front.points.cols() != m || ideal.size() != m) {
    throw DimensionError("cell_decomposition: dimension mismatch");
  }
  if (front.size() < 1) throw ArgumentError("cell_decomposition: empty front");
  for (Eigen::Index i = 0; i < front.points.rows(); ++i) {
    const auto p = front.points.row(i).transpose().array();
    if (!(ideal.array() < p).all() || !(p < reference.array()).all()) {
      throw ArgumentError("cell_decomposition: requires ideal < front points < reference");
    }
  }

  std::vector<Eigen::VectorXd> points;
  for (Eigen::Index i = 0; i < front.points.rows(); ++i) points.push_back(front.points.row(i).transpose());
  const auto coords = grid_coordinates(points, ideal, reference);

  std::vector<std::size_t> cell_counts(static_cast<std::size_t>(m));
  std::size_t total = 1;
  for (Eigen::Index j = 0; j < m; ++j) {
    cell_counts[static_cast<std::size_t>(j)] = coords[static_cast<std::size_t>(j)].size() - 1;
    total *= cell_counts[static_cast<std::size_t>(j)];
  }

  std::vector<Eigen::VectorXd> lows, ups;
  for (std::size_t cell = 0; cell < total; ++cell) {
    std::size_t rem = cell;
    Eigen::VectorXd lo(m), up(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& c = coords[static_cast<std::size_t>(j)];
      const std::size_t k = rem % cell_counts[static_cast<std::size_t>(j)];
      rem /= cell_counts[static_cast<std::size_t>(j)];
      lo[j] = c[k];
      up[j] = c[k + 1];
    }
    bool dominated = false;
    for (const auto& p : points) {
      if ((p.array() <= lo.array()).all()) {
        dominated = true;
        break;
      }
    }
    if (!dominated) {
      lows.push_back(lo);
      ups.push_back(up);
    }
  }

  CellDecomposition out;
  out.lower.resize(static_cast<Eigen::Index>(lows.size()), m);
  out.upper.resize(static_cast<Eigen::Index>(ups.size()), m);
  for (std::size_t i = 0; i < lows.size(); ++i) {
    out.lower.row(static_cast<Eigen::Index>(i)) = lows[i].transpose();
    out.upper.row(static_cast<Eigen::Index>(i)) = ups[i].transpose();
  }
  out.reference = reference;
  out.ideal = ideal;
  return out;
}

double exclusive_hypervolume(const Eigen::VectorXd& candidate, const ParetoFront& front,
                             const Eigen::VectorXd& reference) {
  check_objective_count(reference.size(), "exclusive_hypervolume");
  if (candidate.size() != reference.size() || front.points.cols() != reference.size()) {
    throw DimensionError("exclusive_hypervolume: dimension mismatch");
  }
  if (!(candidate.array() < reference.array()).all()) return 0.0;

  Eigen::MatrixXd augmented(front.points.rows() + 1, front.points.cols());
  augmented.topRows(front.points.rows()) = front.points;
  augmented.bottomRows(1) = candidate.transpose();
  const double gained = dominated_volume(augmented, reference) - dominated_volume(front.points, reference);
  return std::max(gained, 0.0);
}

}  // namespace gpbo
