#pragma once

#include <vector>

#include <Eigen/Dense>

namespace gpbo {

/// Mutually non-dominated objective vectors (minimization), sorted
/// lexicographically, duplicates collapsed.
struct ParetoFront {
  Eigen::MatrixXd points;  // k x m
  int objectives() const { return static_cast<int>(points.cols()); }
  int size() const { return static_cast<int>(points.rows()); }
};

/// Axis-aligned boxes covering the part of [ideal, reference] that is not
/// dominated by the front; disjoint up to shared faces.
struct CellDecomposition {
  Eigen::MatrixXd lower;  // cell x m
  Eigen::MatrixXd upper;  // cell x m
  Eigen::VectorXd reference;
  Eigen::VectorXd ideal;
  int size() const { return static_cast<int>(lower.rows()); }
  double total_volume() const;
};

/// Extract the non-dominated subset of N row vectors under minimization.
ParetoFront pareto_front(const Eigen::MatrixXd& Y);

/// True when a weakly dominates b (a <= b everywhere, a != b).
bool dominates(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Lebesgue measure of the region dominated by the front and bounded by the
/// reference point. Every front point must strictly dominate the reference.
/// Exact; supports 2 and 3 objectives.
double hypervolume(const ParetoFront& front, const Eigen::VectorXd& reference);

/// Same region measured by classifying grid cells; used as the second
/// algebraic route in the test suite and by the 3-objective path.
double hypervolume_grid(const ParetoFront& front, const Eigen::VectorXd& reference);

/// Grid decomposition of the non-dominated region between ideal and
/// reference. Requires ideal < front points < reference, componentwise.
CellDecomposition cell_decomposition(const ParetoFront& front, const Eigen::VectorXd& reference,
                                     const Eigen::VectorXd& ideal);

/// Hypervolume gained by adding the candidate to the front, never negative.
/// Candidates at or beyond the reference contribute zero.
double exclusive_hypervolume(const Eigen::VectorXd& candidate, const ParetoFront& front,
                             const Eigen::VectorXd& reference);

}  // namespace gpbo
