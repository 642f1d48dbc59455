#include <cmath>

#include <doctest.h>

#include "gpbo/design.hpp"
#include "gpbo/errors.hpp"
#include "gpbo/optimizer.hpp"

using namespace gpbo;

namespace {

ScoreFunction with_gradient(std::function<double(const Eigen::VectorXd&)> value,
                            std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient) {
  ScoreFunction fn;
  fn.value = std::move(value);
  fn.gradient = std::move(gradient);
  return fn;
}

ScoreFunction value_only(std::function<double(const Eigen::VectorXd&)> value) {
  ScoreFunction fn;
  fn.value = std::move(value);
  return fn;
}

const Domain kUnit1 = Domain::unit(1);

}  // namespace

TEST_CASE("optimize_acquisition finds a smooth interior maximum") {
  const auto quadratic = [](const Eigen::VectorXd& x) { return -(x[0] - 0.55) * (x[0] - 0.55); };
  const auto gradient = [](const Eigen::VectorXd& x) {
    return Eigen::VectorXd::Constant(1, -2.0 * (x[0] - 0.55)).eval();
  };
  OptimizerConfig config;
  Rng rng(1);

  const auto with_g = optimize_acquisition(with_gradient(quadratic, gradient), kUnit1, config, rng);
  CHECK(std::abs(with_g.x[0] - 0.55) < 1e-3);

  const auto without_g = optimize_acquisition(value_only(quadratic), kUnit1, config, rng);
  CHECK(std::abs(without_g.x[0] - 0.55) < 1e-3);
}

TEST_CASE("optimize_acquisition reaches the boundary on a monotone score") {
  const auto rising = [](const Eigen::VectorXd& x) { return x[0]; };
  OptimizerConfig config;
  Rng rng(2);
  const auto result = optimize_acquisition(value_only(rising), kUnit1, config, rng);
  CHECK(std::abs(result.x[0] - 1.0) < 1e-3);
}

TEST_CASE("optimize_acquisition tolerates a constant score") {
  const auto flat = [](const Eigen::VectorXd&) { return 2.5; };
  OptimizerConfig config;
  Rng rng(3);
  const auto result = optimize_acquisition(value_only(flat), Domain::unit(2), config, rng);
  CHECK(result.score == 2.5);
  CHECK(Domain::unit(2).contains(result.x));
}

TEST_CASE("optimize_acquisition flags NaN scores with the offending point") {
  const auto poisoned = [](const Eigen::VectorXd& x) {
    return x[0] > 0.9 ? std::nan("") : x[0];
  };
  OptimizerConfig config;
  Rng rng(4);
  CHECK_THROWS_AS(optimize_acquisition(value_only(poisoned), kUnit1, config, rng), ScoringError);
  try {
    optimize_acquisition(value_only(poisoned), kUnit1, config, rng);
  } catch (const ScoringError& e) {
    CHECK(e.point().size() == 1);
    CHECK(e.point()[0] > 0.9);
  }
}

TEST_CASE("optimize_acquisition validates refinement settings") {
  OptimizerConfig config;
  config.n_candidates = 3;
  config.n_refine = 5;
  Rng rng(5);
  CHECK_THROWS_AS(optimize_acquisition(value_only([](const Eigen::VectorXd&) { return 0.0; }), kUnit1,
                                       config, rng),
                  ArgumentError);
}

TEST_CASE("local_search stays put at a maximizer") {
  const auto concave = [](const Eigen::VectorXd& x) { return -(x[0] - 0.5) * (x[0] - 0.5); };
  const auto gradient = [](const Eigen::VectorXd& x) {
    return Eigen::VectorXd::Constant(1, -2.0 * (x[0] - 0.5)).eval();
  };
  OptimizerConfig config;
  const auto result =
      local_search(with_gradient(concave, gradient), Eigen::VectorXd::Constant(1, 0.5), kUnit1, config);
  CHECK(result.x[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(result.score == doctest::Approx(0.0));
}

TEST_CASE("local_search satisfies first-order optimality on a concave quadratic") {
  const Eigen::Vector2d target(0.3, 0.7);
  const auto concave = [target](const Eigen::VectorXd& x) {
    return -(x - target).squaredNorm();
  };
  const auto gradient = [target](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(-2.0 * (x - target));
  };
  OptimizerConfig config;
  config.tol = 1e-9;
  config.max_local_iters = 500;
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd x0(2);
    x0 << rng.uniform(), rng.uniform();
    const auto result = local_search(with_gradient(concave, gradient), x0, Domain::unit(2), config);
    CHECK(gradient(result.x).norm() < 1e-4);
    CHECK(result.score >= concave(x0) - 1e-12);
  }
}

TEST_CASE("local_search projects onto the active boundary") {
  // Maximizer (1.4, 0.5) lies outside the box; the result must sit on x1 = 1.
  const Eigen::Vector2d target(1.4, 0.5);
  const auto concave = [target](const Eigen::VectorXd& x) { return -(x - target).squaredNorm(); };
  const auto gradient = [target](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(-2.0 * (x - target));
  };
  OptimizerConfig config;
  config.tol = 1e-9;
  const auto result = local_search(with_gradient(concave, gradient),
                                   Eigen::VectorXd::Constant(2, 0.2), Domain::unit(2), config);
  CHECK(result.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(result.x[1] == doctest::Approx(0.5).epsilon(1e-4));

  CHECK_THROWS_AS(local_search(with_gradient(concave, gradient), Eigen::VectorXd::Constant(2, 1.5),
                               Domain::unit(2), config),
                  ArgumentError);
}

TEST_CASE("optimize_acquisition never scores below the screened candidates") {
  // Rugged multimodal score; compare against scoring the screening design directly.
  const auto rugged = [](const Eigen::VectorXd& x) {
    return std::sin(13.0 * x[0]) * std::sin(27.0 * x[0] + 1.0);
  };
  OptimizerConfig config;
  Rng rng(7);
  const auto result = optimize_acquisition(value_only(rugged), kUnit1, config, rng);

  const Eigen::MatrixXd candidates = scale_design(tplhd(200, 1), kUnit1);
  double best_screened = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < candidates.rows(); ++i) {
    best_screened = std::max(best_screened, rugged(candidates.row(i).transpose()));
  }
  CHECK(result.score >= best_screened - 1e-12);
  CHECK(kUnit1.contains(result.x));
}

TEST_CASE("optimize_acquisition honors warm starts") {
  // The global maximizer hides in a spike no screening candidate reaches.
  const auto spiky = [](const Eigen::VectorXd& x) {
    return -std::abs(x[0] - 0.123456) * 1e3;
  };
  OptimizerConfig config;
  config.use_gradients = false;
  Rng rng(8);
  const Eigen::VectorXd hint = Eigen::VectorXd::Constant(1, 0.123456);
  const auto result = optimize_acquisition(value_only(spiky), kUnit1, config, rng, {hint});
  CHECK(result.score == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("optimize_acquisition is deterministic") {
  const auto wavy = [](const Eigen::VectorXd& x) {
    return std::sin(9.0 * x[0]) + std::cos(5.0 * x[1]);
  };
  OptimizerConfig config;
  Rng r1(11), r2(11);
  const auto a = optimize_acquisition(value_only(wavy), Domain::unit(2), config, r1);
  const auto b = optimize_acquisition(value_only(wavy), Domain::unit(2), config, r2);
  CHECK(a.x == b.x);  // bitwise
  CHECK(a.score == b.score);
}
