#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "gpbo/cli.hpp"
#include "gpbo/errors.hpp"
#include "gpbo/report.hpp"
#include "gpbo/run_csv.hpp"

using namespace gpbo;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "gpbo_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

int run_cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv = {"gpbo"};
  argv.insert(argv.end(), args.begin(), args.end());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("cmd_doe writes the design and reports the scaled minimum distance") {
  DoeOptions options;
  options.n = 9;
  options.dim = 2;
  options.bounds = "0:1,0:1";
  options.out = temp_path("doe9.csv").string();
  const DoeSummary summary = cmd_doe(options);
  REQUIRE(summary.min_distance.has_value());
  // Level-space brute-force minimum sqrt(8), scaled by 1/(n-1).
  CHECK(*summary.min_distance == doctest::Approx(std::sqrt(8.0) / 8.0).epsilon(1e-12));

  const std::string text = read_file(options.out);
  CHECK(count_occurrences(text, "\n") == 10);  // header + 9 rows
  CHECK(text.rfind("x1,x2\n", 0) == 0);

  // Byte-identical on repetition.
  DoeOptions again = options;
  again.out = temp_path("doe9_again.csv").string();
  cmd_doe(again);
  CHECK(read_file(again.out) == text);
}

TEST_CASE("cmd_doe single point and argument errors") {
  DoeOptions options;
  options.n = 1;
  options.dim = 2;
  options.bounds = "0:2,0:4";
  options.out = temp_path("doe1.csv").string();
  const DoeSummary summary = cmd_doe(options);
  CHECK_FALSE(summary.min_distance.has_value());
  const std::string text = read_file(options.out);
  CHECK(text == "x1,x2\n1,2\n");  // domain midpoint

  options.bounds = "0:1";
  CHECK_THROWS_AS(cmd_doe(options), ArgumentError);
  options.bounds = "nonsense";
  CHECK_THROWS_AS(cmd_doe(options), ArgumentError);
  options.bounds = "0:1,0:4";
  options.out = "/nonexistent-dir/doe.csv";
  CHECK_THROWS_AS(cmd_doe(options), IoError);
}

TEST_CASE("cmd_run produces the full evaluation log") {
  RunOptions options;
  options.problem = "branin";
  options.acquisition = "ei";
  options.budget = 3;
  options.init = 5;
  options.seed = 3;
  options.out = temp_path("branin_run.csv").string();
  const RunSummary summary = cmd_run(options);
  CHECK(summary.evaluations == 8);
  CHECK_FALSE(summary.multi_objective);
  CHECK(summary.any_feasible);

  const RunData data = read_run_csv(options.out);
  CHECK(data.rows() == 8);
  CHECK(data.d == 2);
  CHECK(data.m == 1);
  CHECK(data.q == 0);
  CHECK(data.problem == "branin");
  for (int i = 0; i < 5; ++i) CHECK(data.phase[static_cast<std::size_t>(i)] == "init");
  for (int i = 5; i < 8; ++i) CHECK(data.phase[static_cast<std::size_t>(i)] == "bo");
  // Default timing column is zeroed for reproducibility.
  for (double t : data.elapsed) CHECK(t == 0.0);

  RunOptions again = options;
  again.out = temp_path("branin_run_again.csv").string();
  cmd_run(again);
  CHECK(read_file(again.out) == read_file(options.out));
}

TEST_CASE("cmd_run constrained multi-objective keeps the hypervolume non-decreasing") {
  RunOptions options;
  options.problem = "schaffer_constrained";
  options.acquisition = "hvpoi";
  options.budget = 4;
  options.init = 8;
  options.seed = 1;
  options.out = temp_path("schaffer_run.csv").string();
  const RunSummary summary = cmd_run(options);
  CHECK(summary.multi_objective);
  const RunData data = read_run_csv(options.out);
  REQUIRE(data.rows() == 12);
  for (int i = 1; i < data.rows(); ++i) {
    CHECK(data.metric[static_cast<std::size_t>(i)] >=
          data.metric[static_cast<std::size_t>(i - 1)] - 1e-12);
  }
}

TEST_CASE("cmd_run rejects unknown problems and incompatible acquisitions") {
  RunOptions options;
  options.problem = "does_not_exist";
  options.out = temp_path("never.csv").string();
  CHECK_THROWS_AS(cmd_run(options), ConfigurationError);

  options.problem = "schaffer_mo";
  options.acquisition = "ei";
  CHECK_THROWS_AS(cmd_run(options), ConfigurationError);
}

TEST_CASE("config json round trip and overrides") {
  BoConfig base;
  base.budget = 7;
  base.acquisition.kind = AcquisitionKind::HvPoI;
  base.acquisition.reference = Eigen::VectorXd(Eigen::Vector2d(10.0, 10.0));
  HmcConfig hmc;
  hmc.n_samples = 33;
  base.hmc = hmc;

  const std::string json = config_to_json(base);
  const BoConfig parsed = config_from_json(json, BoConfig{});
  CHECK(parsed.budget == 7);
  CHECK(parsed.acquisition.kind == AcquisitionKind::HvPoI);
  REQUIRE(parsed.acquisition.reference.has_value());
  CHECK((*parsed.acquisition.reference)[0] == 10.0);
  REQUIRE(parsed.hmc.has_value());
  CHECK(parsed.hmc->n_samples == 33);

  const BoConfig overridden = config_from_json(R"({"budget": 3, "optimizer": {"n_refine": 2}})", base);
  CHECK(overridden.budget == 3);
  CHECK(overridden.optimizer.n_refine == 2);
  CHECK(overridden.acquisition.kind == AcquisitionKind::HvPoI);  // untouched

  CHECK_THROWS_AS(config_from_json(R"({"budgit": 3})", base), ConfigurationError);
  CHECK_THROWS_AS(config_from_json("{not json", base), ConfigurationError);
}

TEST_CASE("cmd_report renders one marker per evaluation") {
  RunOptions run;
  run.problem = "quadratic1d";
  run.acquisition = "ei";
  run.budget = 3;
  run.init = 4;
  run.seed = 5;
  run.out = temp_path("quad_run.csv").string();
  cmd_run(run);

  ReportOptions report;
  report.in = run.out;
  report.out = temp_path("quad_run.svg").string();
  cmd_report(report);
  const std::string svg = read_file(report.out);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count_occurrences(svg, "<circle") == 7);
  CHECK(svg.find("incumbent progress") != std::string::npos);
}

TEST_CASE("cmd_report multi-objective with no feasible samples annotates the plot") {
  // A hand-written run CSV whose only rows violate the constraint.
  const auto csv_path = temp_path("infeasible.csv");
  {
    std::ofstream out(csv_path);
    out << "# gpbo run\n# problem: synthetic\n";
    out << "iteration,phase,x_1,y_1,y_2,c_1,incumbent_or_hypervolume,elapsed_seconds\n";
    out << "0,init,0.1,1,2,0.4,0,0\n";
    out << "1,init,0.2,2,1,0.3,0,0\n";
  }
  ReportOptions report;
  report.in = csv_path.string();
  report.out = temp_path("infeasible.svg").string();
  cmd_report(report);
  const std::string svg = read_file(report.out);
  CHECK(svg.find("no feasible samples") != std::string::npos);
  CHECK(count_occurrences(svg, "<circle") == 0);
}

TEST_CASE("cmd_report rejects non-run inputs with line numbers") {
  // Feeding a report back in: the SVG header is not a run CSV.
  const auto svg_path = temp_path("selfref.svg");
  {
    std::ofstream out(svg_path);
    out << "<svg xmlns='http://www.w3.org/2000/svg'></svg>\n";
  }
  ReportOptions report;
  report.in = svg_path.string();
  report.out = temp_path("selfref_report.svg").string();
  CHECK_THROWS_AS(cmd_report(report), ParseError);

  const auto broken_path = temp_path("broken.csv");
  {
    std::ofstream out(broken_path);
    out << "iteration,phase,x_1,y_1,incumbent_or_hypervolume,elapsed_seconds\n";
    out << "0,init,0.1,1,0,0\n";
    out << "1,init,0.2,oops,0,0\n";
  }
  report.in = broken_path.string();
  try {
    cmd_report(report);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("config file values hold unless a flag overrides them") {
  const auto config_path = temp_path("run_config.json");
  {
    std::ofstream out(config_path);
    out << R"({"budget": 2, "initial_design_size": 4, "seed": 9, "acquisition": {"kind": "lcb", "beta": 3.5}})";
  }

  // No conflicting flags: the file decides everything.
  RunOptions from_file;
  from_file.problem = "quadratic1d";
  from_file.config_path = config_path.string();
  from_file.out = temp_path("from_file.csv").string();
  const RunSummary file_summary = cmd_run(from_file);
  CHECK(file_summary.evaluations == 6);  // 4 + 2 from the file
  const RunData file_data = read_run_csv(from_file.out);
  CHECK(file_data.config_json.find("\"kind\":\"lcb\"") != std::string::npos);
  CHECK(file_data.config_json.find("\"beta\":3.5") != std::string::npos);
  CHECK(file_data.config_json.find("\"seed\":9") != std::string::npos);

  // An explicit flag beats the file; untouched file values survive.
  RunOptions overridden = from_file;
  overridden.budget = 1;
  overridden.out = temp_path("overridden.csv").string();
  CHECK(cmd_run(overridden).evaluations == 5);  // 4 from file + 1 from flag
}

TEST_CASE("relative output paths honor GPBO_OUT_DIR") {
  const auto dir = temp_path("outdir_env");
  std::filesystem::create_directories(dir);
  setenv("GPBO_OUT_DIR", dir.c_str(), 1);
  DoeOptions options;
  options.n = 3;
  options.dim = 1;
  options.out = "env_doe.csv";
  cmd_doe(options);
  unsetenv("GPBO_OUT_DIR");
  CHECK(std::filesystem::exists(dir / "env_doe.csv"));
}

TEST_CASE("cli_main maps error categories to exit codes") {
  const std::string out = temp_path("cli_doe.csv").string();
  CHECK(run_cli({"doe", "--n", "4", "--dim", "2", "--out", out.c_str()}) == 0);
  CHECK(run_cli({"doe", "--n", "4", "--dim", "2", "--bounds", "9:1,0:1", "--out", out.c_str()}) == 2);
  CHECK(run_cli({"run", "--problem", "nope", "--out", out.c_str()}) == 2);
  CHECK(run_cli({"report", "--in", "/does/not/exist.csv", "--out", out.c_str()}) == 3);
  CHECK(run_cli({"bogus_subcommand"}) == 2);
}
