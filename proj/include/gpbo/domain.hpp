#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gpbo {

/// One bounded continuous input, lower < upper strictly.
struct ContinuousParameter {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
};

/// Ordered box of continuous parameters; the search space of the optimizer.
/// Immutable after construction.
class Domain {
 public:
  explicit Domain(std::vector<ContinuousParameter> parameters);

  int dimension() const { return static_cast<int>(parameters_.size()); }
  const std::vector<ContinuousParameter>& parameters() const { return parameters_; }
  const ContinuousParameter& parameter(int i) const { return parameters_[static_cast<std::size_t>(i)]; }

  Eigen::VectorXd lower() const;
  Eigen::VectorXd upper() const;

  /// [0,1]^d of the requested dimension, names u1..ud.
  static Domain unit(int dimension);

  /// Affine map of an in-box point onto [0,1]^d.
  Eigen::VectorXd to_unit(const Eigen::VectorXd& x) const;

  /// Inverse of to_unit.
  Eigen::VectorXd from_unit(const Eigen::VectorXd& u) const;

  /// Boundary-inclusive box membership.
  bool contains(const Eigen::VectorXd& x) const;

  /// Product of two domains (parameter list concatenation). Duplicate
  /// parameter names are rejected.
  friend Domain operator*(const Domain& a, const Domain& b);

 private:
  std::vector<ContinuousParameter> parameters_;
};

}  // namespace gpbo
