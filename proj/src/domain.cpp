#include "gpbo/domain.hpp"

#include <cmath>
#include <unordered_set>

#include "gpbo/errors.hpp"

namespace gpbo {

namespace {
void check_length(const Domain& domain, const Eigen::VectorXd& x, const char* op) {
  if (x.size() != domain.dimension()) {
    throw DimensionError(std::string(op) + ": vector has length " + std::to_string(x.size()) +
                         ", domain dimension is " + std::to_string(domain.dimension()));
  }
}
}  // namespace

Domain::Domain(std::vector<ContinuousParameter> parameters) : parameters_(std::move(parameters)) {
  if (parameters_.empty()) throw ArgumentError("Domain: needs at least one parameter");
  std::unordered_set<std::string> names;
  for (const auto& p : parameters_) {
    if (!(p.lower < p.upper)) {
      throw ArgumentError("Domain: parameter '" + p.name + "' requires lower < upper");
    }
    if (!std::isfinite(p.lower) || !std::isfinite(p.upper)) {
      throw ArgumentError("Domain: parameter '" + p.name + "' has non-finite bounds");
    }
    if (!names.insert(p.name).second) {
      throw ArgumentError("Domain: duplicate parameter name '" + p.name + "'");
    }
  }
}

Eigen::VectorXd Domain::lower() const {
  Eigen::VectorXd lo(dimension());
  for (int i = 0; i < dimension(); ++i) lo[i] = parameters_[static_cast<std::size_t>(i)].lower;
  return lo;
}

Eigen::VectorXd Domain::upper() const {
  Eigen::VectorXd up(dimension());
  for (int i = 0; i < dimension(); ++i) up[i] = parameters_[static_cast<std::size_t>(i)].upper;
  return up;
}

Domain Domain::unit(int dimension) {
  if (dimension < 1) throw ArgumentError("Domain::unit: dimension must be >= 1");
  std::vector<ContinuousParameter> ps;
  ps.reserve(static_cast<std::size_t>(dimension));
  for (int i = 0; i < dimension; ++i) ps.push_back({"u" + std::to_string(i + 1), 0.0, 1.0});
  return Domain(std::move(ps));
}

Eigen::VectorXd Domain::to_unit(const Eigen::VectorXd& x) const {
  check_length(*this, x, "to_unit");
  Eigen::VectorXd u(dimension());
  for (int i = 0; i < dimension(); ++i) {
    const auto& p = parameters_[static_cast<std::size_t>(i)];
    u[i] = (x[i] - p.lower) / (p.upper - p.lower);
  }
  return u;
}

Eigen::VectorXd Domain::from_unit(const Eigen::VectorXd& u) const {
  check_length(*this, u, "from_unit");
  Eigen::VectorXd x(dimension());
  for (int i = 0; i < dimension(); ++i) {
    const auto& p = parameters_[static_cast<std::size_t>(i)];
    x[i] = p.lower + u[i] * (p.upper - p.lower);
  }
  return x;
}

bool Domain::contains(const Eigen::VectorXd& x) const {
  check_length(*this, x, "contains");
  for (int i = 0; i < dimension(); ++i) {
    const auto& p = parameters_[static_cast<std::size_t>(i)];
    if (x[i] < p.lower || x[i] > p.upper) return false;
  }
  return true;
}

Domain operator*(const Domain& a, const Domain& b) {
  std::vector<ContinuousParameter> ps = a.parameters_;
  ps.insert(ps.end(), b.parameters_.begin(), b.parameters_.end());
  return Domain(std::move(ps));
}

}  // namespace gpbo
