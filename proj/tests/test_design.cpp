#include <cmath>

#include <doctest.h>

#include "gpbo/design.hpp"
#include "gpbo/errors.hpp"
#include "oracles.hpp"

using namespace gpbo;

TEST_CASE("tplhd single point") {
  const Design d = tplhd(1, 3);
  CHECK(d.n == 1);
  CHECK(d.p == 3);
  CHECK(d.levels == Eigen::MatrixXi::Ones(1, 3));
}

TEST_CASE("tplhd n=9 p=2 matches the closed-form pattern") {
  const Design d = tplhd(9, 2);
  Eigen::MatrixXi expected(9, 2);
  expected << 1, 1, 2, 4, 3, 7, 4, 2, 5, 5, 6, 8, 7, 3, 8, 6, 9, 9;
  CHECK(d.levels == expected);
  CHECK(oracles::is_latin(d));
}

TEST_CASE("tplhd n=5 p=2 shrinks by center distance with index tie-break") {
  const Design d = tplhd(5, 2);
  Eigen::MatrixXi expected(5, 2);
  expected << 1, 3, 2, 5, 3, 1, 4, 4, 5, 2;
  CHECK(d.levels == expected);
  CHECK(oracles::is_latin(d));
}

TEST_CASE("tplhd rejects zero sizes") {
  CHECK_THROWS_AS(tplhd(0, 2), ArgumentError);
  CHECK_THROWS_AS(tplhd(2, 0), ArgumentError);
}

TEST_CASE("tplhd Latin property over the n, p grid") {
  for (int n = 1; n <= 30; ++n) {
    for (int p = 1; p <= 5; ++p) {
      CAPTURE(n);
      CAPTURE(p);
      CHECK(oracles::is_latin(tplhd(n, p)));
    }
  }
}

TEST_CASE("pre-shrink construction is a per-column bijection") {
  // For exact grids (n = nd^p) no shrinking happens, so every column of the
  // returned design must already be a permutation of {1,...,n}; this checks
  // the cyclic-weight construction directly.
  for (const auto& [n, p] : {std::pair{27, 3}, std::pair{16, 4}, std::pair{25, 2}}) {
    const Design d = tplhd(n, p);
    CHECK(oracles::is_latin(d));
  }
}

TEST_CASE("tplhd is deterministic") {
  const Design a = tplhd(17, 3);
  const Design b = tplhd(17, 3);
  CHECK(a.levels == b.levels);
}

TEST_CASE("random_lhs basics") {
  Rng rng(123);
  const Design d = random_lhs(12, 4, rng);
  CHECK(oracles::is_latin(d));

  Rng r1(99), r2(99);
  CHECK(random_lhs(8, 3, r1).levels == random_lhs(8, 3, r2).levels);

  Rng r3(5);
  CHECK(random_lhs(1, 4, r3).levels == Eigen::MatrixXi::Ones(1, 4));
}

TEST_CASE("min_distance") {
  Design two;
  two.n = 2;
  two.p = 2;
  two.levels.resize(2, 2);
  two.levels << 1, 1, 2, 2;
  CHECK(min_distance(two) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  // Brute force over all 36 pairs: the closest pair is (2,4)-(4,2) at sqrt(8).
  const Design nine = tplhd(9, 2);
  CHECK(min_distance(nine) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));
  CHECK(min_distance(nine) == doctest::Approx(oracles::brute_force_min_distance(nine.levels)));

  const Design five = tplhd(5, 2);
  CHECK(min_distance(five) == doctest::Approx(oracles::brute_force_min_distance(five.levels)));

  Design one;
  one.n = 1;
  one.p = 1;
  one.levels = Eigen::MatrixXi::Ones(1, 1);
  CHECK_THROWS_AS(min_distance(one), ArgumentError);
}

TEST_CASE("scale_design maps levels onto the box") {
  const Domain domain({{"x", -2.0, 2.0}});

  Design one;
  one.n = 1;
  one.p = 1;
  one.levels = Eigen::MatrixXi::Ones(1, 1);
  CHECK(scale_design(one, domain)(0, 0) == 0.0);  // midpoint

  const Design nine = tplhd(9, 1);
  const Domain unit({{"x", 0.0, 1.0}});
  const Eigen::MatrixXd scaled = scale_design(nine, unit);
  CHECK(scaled.col(0).minCoeff() == 0.0);
  CHECK(scaled.col(0).maxCoeff() == 1.0);
  for (int r = 0; r < 9; ++r) {
    if (nine.levels(r, 0) == 5) CHECK(scaled(r, 0) == 0.5);
  }

  CHECK_THROWS_AS(scale_design(nine, Domain({{"a", 0.0, 1.0}, {"b", 0.0, 1.0}})), DimensionError);
}

TEST_CASE("maximin quality beats the random-LHS median") {
  // Spot-check at unit-test scale; the full grid runs in the acceptance suite.
  Rng rng(2024);
  for (const auto& size : {std::pair{10, 2}, std::pair{20, 3}}) {
    const int n = size.first;
    const int p = size.second;
    const double tplhd_distance = min_distance(tplhd(n, p));
    std::vector<double> random_distances;
    for (int s = 0; s < 200; ++s) {
      const Design d = random_lhs(n, p, rng);
      random_distances.push_back(min_distance(d));
    }
    std::sort(random_distances.begin(), random_distances.end());
    const double median = random_distances[random_distances.size() / 2];
    CAPTURE(n);
    CAPTURE(p);
    CHECK(tplhd_distance >= median);
  }
}
