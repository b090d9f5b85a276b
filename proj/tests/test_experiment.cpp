#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "spheretik/error.hpp"
#include "spheretik/experiment.hpp"
#include "spheretik/vmf.hpp"

using namespace spheretik;

TEST_CASE("chains have the expected shape and a geodesic truth") {
  ExperimentSpec spec;
  spec.length = 8;
  spec.kappa = 1e6;
  spec.seed = 3;
  const Experiment exp = generate_experiment(spec);

  CHECK(exp.problem.nodes().size() == 8);
  CHECK(exp.problem.edges().size() == 7);
  CHECK(exp.problem.nodes()[0].id == "n0");
  CHECK(exp.problem.nodes()[7].id == "n7");
  CHECK(exp.truth.size() == 8);

  // consecutive truth values are equally spaced along one great circle
  const double step = angular_distance(exp.truth.at("n0"), exp.truth.at("n1"));
  for (int i = 1; i + 1 < 8; ++i) {
    const double s = angular_distance(exp.truth.at("n" + std::to_string(i)),
                                      exp.truth.at("n" + std::to_string(i + 1)));
    CHECK(std::abs(s - step) <= 1e-9);
  }

  // near-noiseless observations hug the truth
  for (const auto& n : exp.problem.nodes()) {
    CHECK(n.w == 1.0);
    REQUIRE(n.y.has_value());
    CHECK(angular_distance(normalize(*n.y), exp.truth.at(n.id)) <= 0.01);
  }
}

TEST_CASE("grids connect right and down neighbors") {
  ExperimentSpec spec;
  spec.topology = Topology::Grid2d;
  spec.rows = 3;
  spec.cols = 3;
  spec.seed = 4;
  const Experiment exp = generate_experiment(spec);

  CHECK(exp.problem.nodes().size() == 9);
  CHECK(exp.problem.edges().size() == 12);
  CHECK(exp.problem.has_node("r0c0"));
  CHECK(exp.problem.has_node("r2c2"));
  CHECK(exp.problem.incident(exp.problem.node_index("r1c1")).size() == 4);
  CHECK(exp.problem.incident(exp.problem.node_index("r0c0")).size() == 2);
}

TEST_CASE("interpolation mode pins a seeded subset to the exact truth") {
  ExperimentSpec spec;
  spec.length = 10;
  spec.fixed_fraction = 0.3;
  spec.seed = 5;
  const Experiment exp = generate_experiment(spec);

  int pinned = 0;
  for (std::size_t i = 0; i < exp.problem.nodes().size(); ++i) {
    const Node& n = exp.problem.nodes()[i];
    if (exp.problem.is_fixed(i)) {
      ++pinned;
      REQUIRE(n.y.has_value());
      CHECK(*n.y == exp.truth.at(n.id).vec());
    } else {
      CHECK(n.w == 0.0);
      CHECK(!n.y.has_value());
    }
  }
  CHECK(pinned == 3);

  // a tiny fraction still pins at least one node
  spec.fixed_fraction = 0.01;
  const Experiment one = generate_experiment(spec);
  int count = 0;
  for (std::size_t i = 0; i < one.problem.nodes().size(); ++i) {
    count += one.problem.is_fixed(i) ? 1 : 0;
  }
  CHECK(count == 1);
}

TEST_CASE("generation is deterministic in the seed") {
  ExperimentSpec spec;
  spec.topology = Topology::Grid2d;
  spec.rows = 4;
  spec.cols = 3;
  spec.kappa = 2.0;
  spec.seed = 6;
  const Experiment a = generate_experiment(spec);
  const Experiment b = generate_experiment(spec);

  for (std::size_t i = 0; i < a.problem.nodes().size(); ++i) {
    CHECK(*a.problem.nodes()[i].y == *b.problem.nodes()[i].y);
  }
  for (const auto& [id, t] : a.truth) {
    CHECK(t.vec() == b.truth.at(id).vec());
  }

  spec.seed = 7;
  const Experiment c = generate_experiment(spec);
  bool any_differs = false;
  for (std::size_t i = 0; i < a.problem.nodes().size(); ++i) {
    any_differs = any_differs || !(*a.problem.nodes()[i].y == *c.problem.nodes()[i].y);
  }
  CHECK(any_differs);
}

TEST_CASE("invalid specifications are rejected") {
  ExperimentSpec spec;
  spec.length = 0;
  CHECK_THROWS_AS(generate_experiment(spec), Error);

  spec = ExperimentSpec{};
  spec.topology = Topology::Grid2d;
  spec.rows = 0;
  CHECK_THROWS_AS(generate_experiment(spec), Error);

  spec = ExperimentSpec{};
  spec.kappa = -1.0;
  CHECK_THROWS_AS(generate_experiment(spec), Error);

  spec = ExperimentSpec{};
  spec.lambda = 0.0;
  CHECK_THROWS_AS(generate_experiment(spec), Error);

  spec = ExperimentSpec{};
  spec.fixed_fraction = 1.5;
  CHECK_THROWS_AS(generate_experiment(spec), Error);

  // all-zero data weights leave the instance with nothing to fit
  spec = ExperimentSpec{};
  spec.w = 0.0;
  CHECK_THROWS_AS(generate_experiment(spec), Error);
}
