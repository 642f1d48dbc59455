#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gpbo/bo.hpp"

namespace gpbo {

/// 17-significant-digit decimal rendering used by every CSV writer; '.'
/// decimal separator regardless of locale.
std::string format_double(double value);

/// Write a run history: '#' comment header (tool tag, problem name, config
/// snapshot), then one row per evaluation. Timing values are written as 0
/// unless include_timing is set, keeping default output byte-reproducible.
void write_run_csv(const std::string& path, const BoHistory& history, const std::string& problem_name,
                   const std::string& config_json, bool include_timing = false);

/// Write a design matrix with a header row of parameter names.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& rows,
                      const std::vector<std::string>& column_names);

/// Parsed run CSV, shapes inferred from the header (x_*, y_*, c_* columns).
struct RunData {
  std::string problem;
  std::string config_json;
  int d = 0, m = 0, q = 0;
  std::vector<int> iteration;
  std::vector<std::string> phase;
  Eigen::MatrixXd X, Y, C;
  std::vector<double> metric;
  std::vector<double> elapsed;

  int rows() const { return static_cast<int>(iteration.size()); }
};

RunData read_run_csv(const std::string& path);

}  // namespace gpbo
