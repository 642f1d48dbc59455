#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpbo/bo.hpp"
#include "gpbo/domain.hpp"

namespace gpbo {

/// Analytic benchmark problem; evaluations are pure and deterministic.
struct Problem {
  std::string name;
  Domain domain;
  Objective objective;
  std::optional<Eigen::VectorXd> reference;   // fixed hypervolume reference (multi-objective)
  std::optional<double> known_optimum;        // reporting only
  std::string description;
};

const Problem& get_problem(const std::string& name);
std::vector<std::string> problem_names();

}  // namespace gpbo
