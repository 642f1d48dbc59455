#include "gpbo/design.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "gpbo/errors.hpp"

namespace gpbo {

namespace {

// Smallest nd with nd^p >= n, computed in integers to dodge pow() rounding.
int grid_side(int n, int p) {
  int nd = std::max(1, static_cast<int>(std::floor(std::pow(static_cast<double>(n), 1.0 / p))));
  auto power_at_least_n = [&](int side) {
    std::int64_t v = 1;
    for (int j = 0; j < p; ++j) {
      v *= side;
      if (v >= n) return true;
      if (v > (1LL << 40)) return true;
    }
    return v >= n;
  };
  while (!power_at_least_n(nd)) ++nd;
  return nd;
}

// Rank the kept values of one column back onto {1,...,n}, preserving order.
void rerank_column(Eigen::MatrixXi& levels, int col) {
  const int n = static_cast<int>(levels.rows());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return levels(a, col) < levels(b, col); });
  Eigen::VectorXi ranked(n);
  for (int r = 0; r < n; ++r) ranked[order[static_cast<std::size_t>(r)]] = r + 1;
  levels.col(col) = ranked;
}

}  // namespace

Design tplhd(int n, int p) {
  if (n < 1 || p < 1) throw ArgumentError("tplhd: n and p must be >= 1");

  const int nd = grid_side(n, p);
  std::int64_t total = 1;
  for (int j = 0; j < p; ++j) {
    total *= nd;
    if (total > 100'000'000LL) throw ArgumentError("tplhd: design too large");
  }
  const auto big_n = static_cast<int>(total);

  // Propagate the single seed point: index m with base-nd digits a_0..a_{p-1}
  // gets level 1 + sum_j a_j * nd^((j - d) mod p) in dimension d. The weight
  // exponents are a cyclic shift per dimension, so each column is a bijection
  // of {0,...,N-1} onto {1,...,N}.
  Eigen::MatrixXi full(big_n, p);
  std::vector<std::int64_t> weights(static_cast<std::size_t>(p));
  weights[0] = 1;
  for (int j = 1; j < p; ++j) weights[static_cast<std::size_t>(j)] = weights[static_cast<std::size_t>(j - 1)] * nd;
  std::vector<int> digits(static_cast<std::size_t>(p));
  for (int m = 0; m < big_n; ++m) {
    int rem = m;
    for (int j = 0; j < p; ++j) {
      digits[static_cast<std::size_t>(j)] = rem % nd;
      rem /= nd;
    }
    for (int d = 0; d < p; ++d) {
      std::int64_t level = 1;
      for (int j = 0; j < p; ++j) {
        const int shift = ((j - d) % p + p) % p;
        level += digits[static_cast<std::size_t>(j)] * weights[static_cast<std::size_t>(shift)];
      }
      full(m, d) = static_cast<int>(level);
    }
  }

  Design design;
  design.n = n;
  design.p = p;
  if (big_n == n) {
    design.levels = full;
    return design;
  }

  // Shrink: keep the n points closest to the grid center, ties broken by
  // smaller index, then re-rank every column onto {1,...,n}.
  const double center = (big_n + 1) / 2.0;
  std::vector<int> order(static_cast<std::size_t>(big_n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> dist2(static_cast<std::size_t>(big_n), 0.0);
  for (int m = 0; m < big_n; ++m) {
    double s = 0.0;
    for (int d = 0; d < p; ++d) {
      const double diff = full(m, d) - center;
      s += diff * diff;
    }
    dist2[static_cast<std::size_t>(m)] = s;
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double da = dist2[static_cast<std::size_t>(a)];
    const double db = dist2[static_cast<std::size_t>(b)];
    return da != db ? da < db : a < b;
  });
  std::vector<int> kept(order.begin(), order.begin() + n);
  std::sort(kept.begin(), kept.end());

  design.levels.resize(n, p);
  for (int r = 0; r < n; ++r) design.levels.row(r) = full.row(kept[static_cast<std::size_t>(r)]);
  for (int d = 0; d < p; ++d) rerank_column(design.levels, d);
  return design;
}

Design random_lhs(int n, int p, Rng& rng) {
  if (n < 1 || p < 1) throw ArgumentError("random_lhs: n and p must be >= 1");
  Design design;
  design.n = n;
  design.p = p;
  design.levels.resize(n, p);
  for (int d = 0; d < p; ++d) {
    const auto perm = rng.permutation(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) design.levels(r, d) = static_cast<int>(perm[static_cast<std::size_t>(r)]) + 1;
  }
  return design;
}

double min_distance(const Design& design) {
  if (design.n < 2) throw ArgumentError("min_distance: needs at least two points");
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < design.n; ++i) {
    for (int j = i + 1; j < design.n; ++j) {
      double s = 0.0;
      for (int d = 0; d < design.p; ++d) {
        const double diff = design.levels(i, d) - design.levels(j, d);
        s += diff * diff;
      }
      best = std::min(best, s);
    }
  }
  return std::sqrt(best);
}

Eigen::MatrixXd design_to_unit(const Design& design) {
  Eigen::MatrixXd unit(design.n, design.p);
  for (int r = 0; r < design.n; ++r) {
    for (int d = 0; d < design.p; ++d) {
      unit(r, d) = design.n > 1 ? (design.levels(r, d) - 1.0) / (design.n - 1.0) : 0.5;
    }
  }
  return unit;
}

Eigen::MatrixXd scale_design(const Design& design, const Domain& domain) {
  if (design.p != domain.dimension()) {
    throw DimensionError("scale_design: design dimension " + std::to_string(design.p) +
                         " does not match domain dimension " + std::to_string(domain.dimension()));
  }
  const Eigen::MatrixXd unit = design_to_unit(design);
  Eigen::MatrixXd out(design.n, design.p);
  for (int r = 0; r < design.n; ++r) out.row(r) = domain.from_unit(unit.row(r).transpose()).transpose();
  return out;
}

}  // namespace gpbo
