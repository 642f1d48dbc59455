#pragma once

#include <string>

#include "gpbo/run_csv.hpp"

namespace gpbo {

/// Render a run as a self-contained SVG: incumbent-vs-iteration line plot for
/// single-objective runs, feasible objective scatter with the Pareto front
/// highlighted for multi-objective runs.
std::string render_run_svg(const RunData& data);

}  // namespace gpbo
