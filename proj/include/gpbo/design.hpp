#pragma once

#include <Eigen/Dense>

#include "gpbo/domain.hpp"
#include "gpbo/rng.hpp"

namespace gpbo {

/// Latin hypercube design: n points in p dimensions, each column a
/// permutation of the levels {1,...,n}.
struct Design {
  Eigen::MatrixXi levels;  // n x p
  int n = 0;
  int p = 0;
};

/// Deterministic maximin Latin hypercube built by translational propagation
/// of a one-point seed across a p-dimensional grid, shrunk to n points when
/// the grid overshoots.
Design tplhd(int n, int p);

/// Baseline design: independent uniform random level permutations per column.
Design random_lhs(int n, int p, Rng& rng);

/// Minimum pairwise Euclidean distance between level vectors. Needs n >= 2.
double min_distance(const Design& design);

/// Map levels onto the domain: level l -> (l-1)/(n-1) in [0,1] (0.5 when
/// n = 1), then through the domain's affine transform. Returns n x p points.
Eigen::MatrixXd scale_design(const Design& design, const Domain& domain);

/// Unit-cube coordinates of a design, the intermediate step of scale_design.
Eigen::MatrixXd design_to_unit(const Design& design);

}  // namespace gpbo
