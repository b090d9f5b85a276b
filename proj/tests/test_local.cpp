#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "spheretik/error.hpp"
#include "spheretik/experiment.hpp"
#include "spheretik/graph.hpp"
#include "spheretik/rng.hpp"
#include "spheretik/solvers.hpp"
#include "spheretik/vmf.hpp"

using namespace spheretik;
using spheretik::testing::inf;
using spheretik::testing::node;
using spheretik::testing::star_problem;

namespace {

std::map<NodeId, UnitVec3> feasible_start(const Problem& p, Rng& rng) {
  std::map<NodeId, UnitVec3> x;
  for (std::size_t i = 0; i < p.nodes().size(); ++i) {
    const Node& n = p.nodes()[i];
    if (p.is_fixed(i)) {
      x.emplace(n.id, UnitVec3(*n.y));
    } else {
      x.emplace(n.id, random_unit(rng));
    }
  }
  return x;
}

}  // namespace

TEST_CASE("one free node lands on the weighted neighbor sum") {
  const Problem p = star_problem(Vec3{1, 0, 0}, Vec3{0, 1, 0});
  Rng rng(61);
  const LocalSolution sol = solve_local(p, feasible_start(p, rng), SolverParams{});
  CHECK(sol.converged);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(norm(sol.x.at("c").vec() - Vec3{r, r, 0}) <= 1e-9);
  // fixed neighbors stay put
  CHECK(sol.x.at("p1").vec() == Vec3{1, 0, 0});
}

TEST_CASE("a node with data and no edges stays at its datum") {
  const Problem p = build_problem({node("a", Vec3{0, 0, 1}, 1.0)}, {});
  std::map<NodeId, UnitVec3> x0;
  x0.emplace("a", normalize(Vec3{1, 0, 0}));
  const LocalSolution sol = solve_local(p, x0, SolverParams{});
  CHECK(angular_distance(sol.x.at("a"), normalize(Vec3{0, 0, 1})) <= 1e-12);
}

TEST_CASE("antipodal neighbors leave the middle degenerate") {
  const Problem p = star_problem(Vec3{0, 0, 1}, Vec3{0, 0, -1});
  std::map<NodeId, UnitVec3> x0;
  x0.emplace("c", normalize(Vec3{1, 0, 0}));
  x0.emplace("p1", normalize(Vec3{0, 0, 1}));
  x0.emplace("p2", normalize(Vec3{0, 0, -1}));
  const LocalSolution sol = solve_local(p, x0, SolverParams{});
  CHECK(sol.x.at("c").vec() == Vec3{1, 0, 0});
  REQUIRE(!sol.diagnostics.empty());
  CHECK(sol.diagnostics[0].find("c") != std::string::npos);
}

TEST_CASE("sweeps never increase the objective") {
  ExperimentSpec spec;
  spec.topology = Topology::Grid2d;
  spec.rows = 4;
  spec.cols = 4;
  spec.kappa = 2.0;
  spec.seed = 5;
  const Experiment exp = generate_experiment(spec);

  Rng rng(62);
  for (int trial = 0; trial < 5; ++trial) {
    const auto x0 = feasible_start(exp.problem, rng);
    const LocalSolution sol = solve_local(exp.problem, x0, SolverParams{});
    CHECK(objective_original(exp.problem, sol.x) <=
          objective_original(exp.problem, x0) + 1e-12);
  }
}

TEST_CASE("multistart is deterministic and no worse than a single start") {
  ExperimentSpec spec;
  spec.length = 8;
  spec.kappa = 2.0;
  spec.seed = 9;
  const Experiment exp = generate_experiment(spec);

  SolverParams params;
  params.seed = 123;
  const LocalSolution a = solve_local_multistart(exp.problem, 10, params);
  const LocalSolution b = solve_local_multistart(exp.problem, 10, params);
  for (const auto& [id, x] : a.x) {
    CHECK(x.vec() == b.x.at(id).vec());
  }

  const LocalSolution single = solve_local_multistart(exp.problem, 1, params);
  CHECK(objective_original(exp.problem, a.x) <=
        objective_original(exp.problem, single.x) + 1e-12);
}

TEST_CASE("starts violating the constraints are rejected") {
  const Problem p = star_problem(Vec3{1, 0, 0}, Vec3{0, 1, 0});

  std::map<NodeId, UnitVec3> missing;
  missing.emplace("p1", normalize(Vec3{1, 0, 0}));
  missing.emplace("p2", normalize(Vec3{0, 1, 0}));
  try {
    solve_local(p, missing, SolverParams{});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingValue);
  }

  std::map<NodeId, UnitVec3> moved = missing;
  moved.emplace("c", normalize(Vec3{0, 0, 1}));
  moved.erase("p1");
  moved.emplace("p1", normalize(Vec3{0, 0, 1}));  // not the pinned datum
  try {
    solve_local(p, moved, SolverParams{});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FixedNodeViolation);
  }
}

TEST_CASE("objective evaluation guards its inputs") {
  const Problem p = star_problem(Vec3{1, 0, 0}, Vec3{0, 1, 0});
  std::map<NodeId, UnitVec3> x;
  x.emplace("c", normalize(Vec3{0, 0, 1}));
  x.emplace("p1", normalize(Vec3{1, 0, 0}));
  CHECK_THROWS_AS(objective_original(p, x), Error);  // p2 missing

  x.emplace("p2", normalize(Vec3{0, 1, 0}));
  const double lam_terms = (1.0 - 0.0) + (1.0 - 0.0);
  CHECK(objective_original(p, x) == doctest::Approx(lam_terms).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
  SolverParams params;
  params.step_scale = 1.0;
  CHECK_THROWS_AS(validate_params(params), Error);
  params.step_scale = 0.0;
  CHECK_THROWS_AS(validate_params(params), Error);
  params = SolverParams{};
  params.max_iters = 0;
  CHECK_THROWS_AS(validate_params(params), Error);
  params = SolverParams{};
  params.tol_change = -1.0;
  CHECK_THROWS_AS(validate_params(params), Error);
  CHECK_NOTHROW(validate_params(SolverParams{}));
}
