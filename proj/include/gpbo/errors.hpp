#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gpbo {

/// Vector/matrix shape does not match what the operation expects.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scalar argument is out of its valid range (n = 0, negative step, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data contains NaN/Inf where finite values are required.
class DataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Covariance factorization failed even after jitter escalation.
class NotPositiveDefiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sampler cannot produce values (degenerate predictive distribution).
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sampler/optimizer start state is unusable (non-finite target).
class InitializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An acquisition returned NaN at a concrete point; carries that point.
class ScoringError : public std::runtime_error {
 public:
  ScoringError(const std::string& what, Eigen::VectorXd point)
      : std::runtime_error(what), point_(std::move(point)) {}
  const Eigen::VectorXd& point() const { return point_; }

 private:
  Eigen::VectorXd point_;
};

/// The objective returned a non-finite value; carries the query point.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, Eigen::VectorXd point)
      : std::runtime_error(what), point_(std::move(point)) {}
  const Eigen::VectorXd& point() const { return point_; }

 private:
  Eigen::VectorXd point_;
};

/// Inconsistent run configuration (acquisition vs problem shape, unknown names).
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; line() is 1-based, 0 when not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line = 0)
      : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace gpbo
