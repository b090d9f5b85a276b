#include <cmath>
#include <map>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "spheretik/error.hpp"
#include "spheretik/experiment.hpp"
#include "spheretik/graph.hpp"
#include "spheretik/solvers.hpp"

using namespace spheretik;
using spheretik::testing::inf;
using spheretik::testing::node;
using spheretik::testing::star_problem;

namespace {

// the convex surrogate the ball stage minimizes
double quadratic_objective(const Problem& p, const std::map<NodeId, Vec3>& x) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.nodes().size(); ++i) {
    const Node& n = p.nodes()[i];
    if (p.is_fixed(i) || n.w == 0.0) continue;
    const Vec3 d = x.at(n.id) - *n.y;
    total += 0.5 * n.w * inner(d, d);
  }
  for (std::size_t e = 0; e < p.edges().size(); ++e) {
    const auto [ui, vi] = p.edge_endpoints(e);
    const Vec3 d = x.at(p.nodes()[ui].id) - x.at(p.nodes()[vi].id);
    total += 0.5 * p.edges()[e].lambda * inner(d, d);
  }
  return total;
}

}  // namespace

TEST_CASE("all data on the sphere already: rounding returns the data") {
  std::vector<Node> nodes{
      node("a", Vec3{1, 0, 0}, inf()),
      node("b", Vec3{0, 1, 0}, inf()),
  };
  const Problem p = build_problem(nodes, {{"a", "b", 1.0}});
  const BaselineSolution sol = solve_baseline(p, SolverParams{});
  CHECK(sol.converged);
  CHECK(sol.rounded.at("a").vec() == Vec3{1, 0, 0});
  CHECK(sol.rounded.at("b").vec() == Vec3{0, 1, 0});
}

TEST_CASE("an isolated node with data sits at its datum") {
  const Problem p = build_problem({node("a", Vec3{0, 0.6, 0.8}, 2.0)}, {});
  const BaselineSolution sol = solve_baseline(p, SolverParams{});
  CHECK(norm(sol.ball.at("a") - Vec3{0, 0.6, 0.8}) <= 1e-12);
  CHECK(angular_distance(sol.rounded.at("a"), normalize(Vec3{0, 0.6, 0.8})) <= 1e-12);
}

TEST_CASE("antipodal neighbors collapse the middle and trigger the fallback") {
  const Problem p = star_problem(Vec3{0, 0, 1}, Vec3{0, 0, -1});
  const BaselineSolution sol = solve_baseline(p, SolverParams{});
  CHECK(norm(sol.ball.at("c")) <= 1e-9);
  // no datum on the middle node, so the fallback is the fixed default
  CHECK(sol.rounded.at("c").vec() == Vec3{0, 0, 1});
  REQUIRE(!sol.diagnostics.empty());
  CHECK(sol.diagnostics[0].find("c") != std::string::npos);
}

TEST_CASE("the ball stage reaches a fixed point of its update map") {
  ExperimentSpec spec;
  spec.topology = Topology::Grid2d;
  spec.rows = 4;
  spec.cols = 3;
  spec.kappa = 2.0;
  spec.seed = 17;
  const Experiment exp = generate_experiment(spec);
  const Problem& p = exp.problem;
  const BaselineSolution sol = solve_baseline(p, SolverParams{});
  CHECK(sol.converged);

  for (std::size_t i = 0; i < p.nodes().size(); ++i) {
    if (p.is_fixed(i)) continue;
    const Node& n = p.nodes()[i];
    CHECK(norm(sol.ball.at(n.id)) <= 1.0 + 1e-12);

    Vec3 s = n.w > 0.0 ? *n.y * n.w : Vec3{};
    double denom = n.w;
    for (std::size_t e : p.incident(i)) {
      const auto [ui, vi] = p.edge_endpoints(e);
      const std::size_t other = ui == i ? vi : ui;
      s += sol.ball.at(p.nodes()[other].id) * p.edges()[e].lambda;
      denom += p.edges()[e].lambda;
    }
    Vec3 target = s * (1.0 / denom);
    const double tn = norm(target);
    if (tn > 1.0) target = target * (1.0 / tn);
    CHECK(norm(sol.ball.at(n.id) - target) <= 1e-7);
  }
}

TEST_CASE("the ball optimum lower-bounds every unit-sphere candidate") {
  ExperimentSpec spec;
  spec.length = 9;
  spec.kappa = 10.0;
  spec.seed = 23;
  const Experiment exp = generate_experiment(spec);
  const BaselineSolution sol = solve_baseline(exp.problem, SolverParams{});
  const LocalSolution loc = solve_local_multistart(exp.problem, 10, SolverParams{});

  std::map<NodeId, Vec3> unit;
  for (const auto& [id, x] : loc.x) unit[id] = x.vec();
  CHECK(quadratic_objective(exp.problem, sol.ball) <=
        quadratic_objective(exp.problem, unit) + 1e-9);

  // rounding the truth can only cost a little on a clean instance
  std::map<NodeId, Vec3> truth;
  for (const auto& [id, x] : exp.truth) truth[id] = x.vec();
  CHECK(quadratic_objective(exp.problem, sol.ball) <=
        quadratic_objective(exp.problem, truth) + 1e-9);
}
