#include "gpbo/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpbo/design.hpp"
#include "gpbo/problems.hpp"
#include "gpbo/report.hpp"
#include "gpbo/run_csv.hpp"

namespace gpbo {

namespace {

using nlohmann::json;

KernelFamily kernel_from_string(const std::string& name) {
  if (name == "matern52") return KernelFamily::Matern52;
  if (name == "squared_exponential" || name == "se") return KernelFamily::SquaredExponential;
  throw ConfigurationError("unknown kernel '" + name + "'");
}

std::string kernel_to_string(KernelFamily family) {
  return family == KernelFamily::Matern52 ? "matern52" : "squared_exponential";
}

json vector_to_json(const Eigen::VectorXd& v) {
  json array = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) array.push_back(v[i]);
  return array;
}

Eigen::VectorXd vector_from_json(const json& array, const char* key) {
  if (!array.is_array()) throw ConfigurationError(std::string("config: '") + key + "' must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(array.size()));
  for (std::size_t i = 0; i < array.size(); ++i) v[static_cast<Eigen::Index>(i)] = array[i].get<double>();
  return v;
}

void reject_unknown_keys(const json& object, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ConfigurationError("config: unknown key '" + key + "' in " + where);
  }
}

/// Default output directory for relative paths, via GPBO_OUT_DIR.
std::string resolve_out_path(const std::string& path) {
  const char* dir = std::getenv("GPBO_OUT_DIR");
  if (dir == nullptr || *dir == '\0' || path.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(dir) / p).string();
}

Domain domain_from_bounds(const std::string& bounds, int dim) {
  if (bounds.empty()) return Domain::unit(dim);
  std::vector<ContinuousParameter> params;
  std::istringstream stream(bounds);
  std::string token;
  int index = 0;
  while (std::getline(stream, token, ',')) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) {
      throw ArgumentError("bounds: expected 'lo:hi' pairs separated by commas, got '" + token + "'");
    }
    auto parse_bound = [&token](const std::string& text) {
      char* end = nullptr;
      const double v = std::strtod(text.c_str(), &end);
      if (text.empty() || end != text.c_str() + text.size()) {
        throw ArgumentError("bounds: invalid number in '" + token + "'");
      }
      return v;
    };
    const double lo = parse_bound(token.substr(0, colon));
    const double hi = parse_bound(token.substr(colon + 1));
    params.push_back({"x" + std::to_string(++index), lo, hi});
  }
  if (static_cast<int>(params.size()) != dim) {
    throw ArgumentError("bounds: got " + std::to_string(params.size()) + " pairs for dim " +
                        std::to_string(dim));
  }
  return Domain(std::move(params));
}

}  // namespace

std::string config_to_json(const BoConfig& config) {
  json j;
  j["budget"] = config.budget;
  j["initial_design_size"] = config.initial_design_size;
  j["seed"] = config.seed;
  j["kernel"] = kernel_to_string(config.kernel);
  j["restarts"] = config.restarts;
  j["clip_nonfinite"] = config.clip_nonfinite;

  json acq;
  acq["kind"] = to_string(config.acquisition.kind);
  acq["beta"] = config.acquisition.beta;
  acq["mes_samples"] = config.acquisition.mes_samples;
  acq["mes_grid_size"] = config.acquisition.mes_grid_size;
  acq["pof_threshold"] = config.acquisition.pof_threshold;
  if (config.acquisition.reference) acq["reference"] = vector_to_json(*config.acquisition.reference);
  if (config.acquisition.ideal) acq["ideal"] = vector_to_json(*config.acquisition.ideal);
  j["acquisition"] = acq;

  json opt;
  opt["n_candidates"] = config.optimizer.n_candidates;
  opt["n_refine"] = config.optimizer.n_refine;
  opt["max_local_iters"] = config.optimizer.max_local_iters;
  opt["tol"] = config.optimizer.tol;
  opt["use_gradients"] = config.optimizer.use_gradients;
  j["optimizer"] = opt;

  if (config.hmc) {
    json hmc;
    hmc["n_samples"] = config.hmc->n_samples;
    hmc["step_size"] = config.hmc->step_size;
    hmc["leapfrog_steps"] = config.hmc->leapfrog_steps;
    hmc["burn_in"] = config.hmc->burn_in;
    hmc["thin"] = config.hmc->thin;
    j["hmc"] = hmc;
  }
  return j.dump();
}

BoConfig config_from_json(const std::string& json_text, BoConfig base) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigurationError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigurationError("config: top level must be an object");
  reject_unknown_keys(j,
                      {"budget", "initial_design_size", "seed", "kernel", "restarts",
                       "clip_nonfinite", "acquisition", "optimizer", "hmc"},
                      "top level");

  try {
    if (j.contains("budget")) base.budget = j["budget"].get<int>();
    if (j.contains("initial_design_size")) base.initial_design_size = j["initial_design_size"].get<int>();
    if (j.contains("seed")) base.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("kernel")) base.kernel = kernel_from_string(j["kernel"].get<std::string>());
    if (j.contains("restarts")) base.restarts = j["restarts"].get<int>();
    if (j.contains("clip_nonfinite")) base.clip_nonfinite = j["clip_nonfinite"].get<bool>();

    if (j.contains("acquisition")) {
      const json& acq = j["acquisition"];
      reject_unknown_keys(
          acq, {"kind", "beta", "mes_samples", "mes_grid_size", "pof_threshold", "reference", "ideal"},
          "acquisition");
      if (acq.contains("kind")) base.acquisition.kind = acquisition_kind_from_string(acq["kind"].get<std::string>());
      if (acq.contains("beta")) base.acquisition.beta = acq["beta"].get<double>();
      if (acq.contains("mes_samples")) base.acquisition.mes_samples = acq["mes_samples"].get<int>();
      if (acq.contains("mes_grid_size")) base.acquisition.mes_grid_size = acq["mes_grid_size"].get<int>();
      if (acq.contains("pof_threshold")) base.acquisition.pof_threshold = acq["pof_threshold"].get<double>();
      if (acq.contains("reference")) base.acquisition.reference = vector_from_json(acq["reference"], "reference");
      if (acq.contains("ideal")) base.acquisition.ideal = vector_from_json(acq["ideal"], "ideal");
    }

    if (j.contains("optimizer")) {
      const json& opt = j["optimizer"];
      reject_unknown_keys(opt, {"n_candidates", "n_refine", "max_local_iters", "tol", "use_gradients"},
                          "optimizer");
      if (opt.contains("n_candidates")) base.optimizer.n_candidates = opt["n_candidates"].get<int>();
      if (opt.contains("n_refine")) base.optimizer.n_refine = opt["n_refine"].get<int>();
      if (opt.contains("max_local_iters")) base.optimizer.max_local_iters = opt["max_local_iters"].get<int>();
      if (opt.contains("tol")) base.optimizer.tol = opt["tol"].get<double>();
      if (opt.contains("use_gradients")) base.optimizer.use_gradients = opt["use_gradients"].get<bool>();
    }

    if (j.contains("hmc")) {
      if (j["hmc"].is_null()) {
        base.hmc.reset();
      } else {
        const json& hmc = j["hmc"];
        reject_unknown_keys(hmc, {"n_samples", "step_size", "leapfrog_steps", "burn_in", "thin"}, "hmc");
        HmcConfig c = base.hmc.value_or(HmcConfig{});
        if (hmc.contains("n_samples")) c.n_samples = hmc["n_samples"].get<int>();
        if (hmc.contains("step_size")) c.step_size = hmc["step_size"].get<double>();
        if (hmc.contains("leapfrog_steps")) c.leapfrog_steps = hmc["leapfrog_steps"].get<int>();
        if (hmc.contains("burn_in")) c.burn_in = hmc["burn_in"].get<int>();
        if (hmc.contains("thin")) c.thin = hmc["thin"].get<int>();
        base.hmc = c;
      }
    }
  } catch (const json::exception& e) {
    throw ConfigurationError(std::string("config: ") + e.what());
  }
  return base;
}

DoeSummary cmd_doe(const DoeOptions& options) {
  if (options.n < 1) throw ArgumentError("doe: --n must be >= 1");
  if (options.dim < 1) throw ArgumentError("doe: --dim must be >= 1");
  if (options.out.empty()) throw ArgumentError("doe: --out is required");

  const Domain domain = domain_from_bounds(options.bounds, options.dim);
  const Design design = tplhd(options.n, options.dim);
  const Eigen::MatrixXd scaled = scale_design(design, domain);

  std::vector<std::string> names;
  for (const auto& p : domain.parameters()) names.push_back(p.name);
  write_matrix_csv(resolve_out_path(options.out), scaled, names);

  DoeSummary summary;
  if (options.n >= 2) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < options.n; ++i) {
      for (int j = i + 1; j < options.n; ++j) {
        best = std::min(best, (scaled.row(i) - scaled.row(j)).norm());
      }
    }
    summary.min_distance = best;
  }
  return summary;
}

RunSummary cmd_run(const RunOptions& options) {
  const Problem& problem = get_problem(options.problem);

  BoConfig config;
  if (!options.config_path.empty()) {
    std::ifstream in(options.config_path);
    if (!in) throw IoError("cannot open config '" + options.config_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    config = config_from_json(buffer.str(), config);
  }
  // Explicit command-line values take precedence over the file.
  if (options.budget) config.budget = *options.budget;
  if (options.init) config.initial_design_size = *options.init;
  if (options.seed) config.seed = *options.seed;
  if (options.acquisition) config.acquisition.kind = acquisition_kind_from_string(*options.acquisition);
  if (options.beta) config.acquisition.beta = *options.beta;
  if (options.restarts) config.restarts = *options.restarts;
  if (options.kernel) config.kernel = kernel_from_string(*options.kernel);
  if (options.hmc && !config.hmc) config.hmc = HmcConfig{};

  // Multi-objective problems carry a fixed hypervolume reference.
  if (!config.acquisition.reference && problem.reference) {
    config.acquisition.reference = *problem.reference;
  }

  std::string out_path = options.out;
  if (out_path.empty()) {
    out_path = options.problem + "_" + to_string(config.acquisition.kind) + "_seed" +
               std::to_string(config.seed) + ".csv";
  }
  out_path = resolve_out_path(out_path);

  const std::string config_json = config_to_json(config);
  BoHistory history;
  try {
    history = bayesian_optimize(problem.objective, problem.domain, config);
  } catch (const BoAbort& abort) {
    // Persist what was evaluated before the failing point, then re-throw.
    write_run_csv(out_path, abort.partial_history(), problem.name, config_json, options.timing);
    std::cerr << "aborted: " << abort.what() << "\n";
    std::cerr << "partial history written to " << out_path << "\n";
    throw;
  }
  write_run_csv(out_path, history, problem.name, config_json, options.timing);

  RunSummary summary;
  summary.out_path = out_path;
  summary.evaluations = history.evaluations();
  summary.multi_objective = problem.objective.n_objectives > 1;
  const Incumbent best = incumbent(history, config.acquisition.pof_threshold);
  summary.any_feasible = best.any_feasible;
  if (!history.records.empty()) summary.final_metric = history.records.back().metric;
  if (!summary.multi_objective && best.any_feasible) summary.best_x = best.best_x;
  return summary;
}

void cmd_report(const ReportOptions& options) {
  if (options.in.empty() || options.out.empty()) throw ArgumentError("report: --in and --out are required");
  const RunData data = read_run_csv(options.in);
  const std::string svg = render_run_svg(data);
  const std::string out_path = resolve_out_path(options.out);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + out_path + "' for writing");
  out << svg;
  if (!out) throw IoError("failed while writing '" + out_path + "'");
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Gaussian-process Bayesian optimization benchmark CLI"};
  app.require_subcommand(1);

  DoeOptions doe;
  auto* doe_cmd = app.add_subcommand("doe", "Generate a maximin Latin hypercube design CSV");
  doe_cmd->add_option("--n", doe.n, "Number of design points")->required();
  doe_cmd->add_option("--dim", doe.dim, "Design dimension")->required();
  doe_cmd->add_option("--bounds", doe.bounds, "Comma-separated lo:hi pairs (default unit cube)");
  doe_cmd->add_option("--out", doe.out, "Output CSV path")->required();

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run Bayesian optimization on a built-in problem");
  run_cmd->add_option("--problem", run.problem, "Problem name")->required();
  std::string acquisition;
  auto* acq_opt = run_cmd->add_option("--acquisition", acquisition, "ei|poi|lcb|mes|hvpoi|pof");
  int budget = 0;
  auto* budget_opt = run_cmd->add_option("--budget", budget, "Optimization iterations after the initial design");
  int init = 0;
  auto* init_opt = run_cmd->add_option("--init", init, "Initial design size");
  std::uint64_t seed = 0;
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Random seed");
  run_cmd->add_option("--config", run.config_path, "JSON configuration file");
  run_cmd->add_option("--out", run.out, "Output CSV path");
  run_cmd->add_flag("--timing", run.timing, "Record wall times in the CSV (breaks byte reproducibility)");
  double beta = 0.0;
  auto* beta_opt = run_cmd->add_option("--beta", beta, "LCB exploration weight");
  int restarts = 0;
  auto* restarts_opt = run_cmd->add_option("--restarts", restarts, "Hyperparameter optimizer restarts");
  std::string kernel;
  auto* kernel_opt = run_cmd->add_option("--kernel", kernel, "matern52|squared_exponential");
  run_cmd->add_flag("--hmc", run.hmc, "Marginalize hyperparameters with HMC");

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "Render a run CSV as an SVG plot");
  report_cmd->add_option("--in", report.in, "Run CSV path")->required();
  report_cmd->add_option("--out", report.out, "Output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits with 0
  }

  try {
    if (doe_cmd->parsed()) {
      const DoeSummary summary = cmd_doe(doe);
      std::cout << "wrote " << doe.n << " points to " << resolve_out_path(doe.out) << "\n";
      if (summary.min_distance) {
        std::cout << "min distance: " << format_double(*summary.min_distance) << "\n";
      }
    } else if (run_cmd->parsed()) {
      if (*acq_opt) run.acquisition = acquisition;
      if (*budget_opt) run.budget = budget;
      if (*init_opt) run.init = init;
      if (*seed_opt) run.seed = seed;
      if (*beta_opt) run.beta = beta;
      if (*restarts_opt) run.restarts = restarts;
      if (*kernel_opt) run.kernel = kernel;
      const RunSummary summary = cmd_run(run);
      std::cout << "wrote " << summary.evaluations << " evaluations to " << summary.out_path << "\n";
      if (summary.multi_objective) {
        std::cout << "final feasible-front hypervolume: " << format_double(summary.final_metric) << "\n";
      } else if (summary.any_feasible) {
        std::cout << "final incumbent: " << format_double(summary.final_metric) << " at x = (";
        for (Eigen::Index i = 0; i < summary.best_x.size(); ++i) {
          std::cout << (i ? ", " : "") << format_double(summary.best_x[i]);
        }
        std::cout << ")\n";
      } else {
        std::cout << "no feasible samples\n";
      }
    } else if (report_cmd->parsed()) {
      cmd_report(report);
      std::cout << "wrote " << resolve_out_path(report.out) << "\n";
    }
  } catch (const ConfigurationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace gpbo
