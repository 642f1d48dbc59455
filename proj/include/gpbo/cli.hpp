#pragma once

#include <optional>
#include <string>

#include "gpbo/bo.hpp"

namespace gpbo {

/// JSON rendering of the effective run configuration; the same schema is
/// accepted back through --config files.
std::string config_to_json(const BoConfig& config);

/// Apply a JSON configuration document on top of `base`. Unknown keys are
/// rejected to catch typos.
BoConfig config_from_json(const std::string& json_text, BoConfig base);

struct DoeOptions {
  int n = 0;
  int dim = 0;
  std::string bounds;  // "lo:hi,lo:hi,..." (empty = unit cube)
  std::string out;
};

struct DoeSummary {
  std::optional<double> min_distance;  // scaled space; absent for n = 1
};

DoeSummary cmd_doe(const DoeOptions& options);

/// Unset optionals fall back to the config file (when given), then to the
/// library defaults; explicitly passed flags always win.
struct RunOptions {
  std::string problem;
  std::optional<std::string> acquisition;
  std::optional<int> budget;
  std::optional<int> init;
  std::optional<std::uint64_t> seed;
  std::string config_path;  // optional JSON file
  std::string out;          // empty = derived from problem/acquisition/seed
  bool timing = false;      // write measured wall times instead of zeros
  std::optional<double> beta;
  std::optional<int> restarts;
  std::optional<std::string> kernel;  // "matern52" | "squared_exponential"
  bool hmc = false;                   // enable hyperparameter marginalization
};

struct RunSummary {
  std::string out_path;
  int evaluations = 0;
  bool multi_objective = false;
  bool any_feasible = false;
  double final_metric = 0.0;  // incumbent best or feasible-front hypervolume
  Eigen::VectorXd best_x;     // single-objective only
};

RunSummary cmd_run(const RunOptions& options);

struct ReportOptions {
  std::string in;
  std::string out;
};

void cmd_report(const ReportOptions& options);

/// Full command-line entry point; returns the process exit code
/// (0 success, 2 configuration/argument errors, 3 runtime errors).
int cli_main(int argc, const char* const* argv);

}  // namespace gpbo
