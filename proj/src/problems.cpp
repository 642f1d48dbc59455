#include "gpbo/problems.hpp"

#include <cmath>
#include <numbers>

#include "gpbo/errors.hpp"

namespace gpbo {

namespace {

constexpr double kPi = std::numbers::pi;

ObjectiveResult scalar_result(double value) {
  ObjectiveResult r;
  r.objectives = Eigen::VectorXd::Constant(1, value);
  r.constraints = Eigen::VectorXd(0);
  return r;
}

double branin_value(double x1, double x2) {
  const double b = 5.1 / (4.0 * kPi * kPi);
  const double c = 5.0 / kPi;
  const double t = 1.0 / (8.0 * kPi);
  const double inner = x2 - b * x1 * x1 + c * x1 - 6.0;
  return inner * inner + 10.0 * (1.0 - t) * std::cos(x1) + 10.0;
}

double sixhump_value(double x, double y) {
  return (4.0 - 2.1 * x * x + x * x * x * x / 3.0) * x * x + x * y + (-4.0 + 4.0 * y * y) * y * y;
}

std::vector<Problem> build_problems() {
  std::vector<Problem> problems;

  {
    Problem p{.name = "branin",
              .domain = Domain({{"x1", -5.0, 10.0}, {"x2", 0.0, 15.0}}),
              .objective = {},
              .reference = std::nullopt,
              .known_optimum = 0.39788735772973837,
              .description = "Branin-Hoo function, three global minima"};
    p.objective.fn = [](const Eigen::VectorXd& x) { return scalar_result(branin_value(x[0], x[1])); };
    p.objective.n_objectives = 1;
    problems.push_back(std::move(p));
  }

  {
    Problem p{.name = "quadratic1d",
              .domain = Domain({{"x", 0.0, 1.0}}),
              .objective = {},
              .reference = std::nullopt,
              .known_optimum = 0.0,
              .description = "Convex parabola with minimum at 0.3"};
    p.objective.fn = [](const Eigen::VectorXd& x) {
      return scalar_result((x[0] - 0.3) * (x[0] - 0.3));
    };
    p.objective.n_objectives = 1;
    problems.push_back(std::move(p));
  }

  {
    Problem p{.name = "sixhump",
              .domain = Domain({{"x1", -3.0, 3.0}, {"x2", -2.0, 2.0}}),
              .objective = {},
              .reference = std::nullopt,
              .known_optimum = -1.031628453489877,
              .description = "Six-hump camel function, two global minima"};
    p.objective.fn = [](const Eigen::VectorXd& x) { return scalar_result(sixhump_value(x[0], x[1])); };
    p.objective.n_objectives = 1;
    problems.push_back(std::move(p));
  }

  {
    Problem p{.name = "schaffer_mo",
              .domain = Domain({{"x", -1.0, 3.0}}),
              .objective = {},
              .reference = Eigen::VectorXd(Eigen::Vector2d(10.0, 10.0)),
              .known_optimum = std::nullopt,
              .description = "Two-objective Schaffer problem; Pareto set x in [0, 2]"};
    p.objective.fn = [](const Eigen::VectorXd& x) {
      ObjectiveResult r;
      r.objectives = Eigen::Vector2d(x[0] * x[0], (x[0] - 2.0) * (x[0] - 2.0));
      r.constraints = Eigen::VectorXd(0);
      return r;
    };
    p.objective.n_objectives = 2;
    problems.push_back(std::move(p));
  }

  {
    // Schaffer objectives lifted to two inputs; the second input is inert in
    // the objectives and drives the inequality constraint x2 >= 0.5.
    Problem p{.name = "schaffer_constrained",
              .domain = Domain({{"x1", -1.0, 3.0}, {"x2", 0.0, 1.0}}),
              .objective = {},
              .reference = Eigen::VectorXd(Eigen::Vector2d(10.0, 10.0)),
              .known_optimum = std::nullopt,
              .description = "Constrained Schaffer mirror: feasible iff x2 >= 0.5"};
    p.objective.fn = [](const Eigen::VectorXd& x) {
      ObjectiveResult r;
      r.objectives = Eigen::Vector2d(x[0] * x[0], (x[0] - 2.0) * (x[0] - 2.0));
      r.constraints = Eigen::VectorXd::Constant(1, 0.5 - x[1]);
      return r;
    };
    p.objective.n_objectives = 2;
    p.objective.n_constraints = 1;
    problems.push_back(std::move(p));
  }

  return problems;
}

const std::vector<Problem>& all_problems() {
  static const std::vector<Problem> problems = build_problems();
  return problems;
}

}  // namespace

const Problem& get_problem(const std::string& name) {
  for (const auto& p : all_problems()) {
    if (p.name == name) return p;
  }
  throw ConfigurationError("unknown problem '" + name + "'");
}

std::vector<std::string> problem_names() {
  std::vector<std::string> names;
  for (const auto& p : all_problems()) names.push_back(p.name);
  return names;
}

}  // namespace gpbo
