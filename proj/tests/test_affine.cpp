#include <cmath>
#include <map>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "spheretik/affine_map.hpp"
#include "spheretik/error.hpp"
#include "spheretik/graph.hpp"
#include "spheretik/pauli.hpp"
#include "spheretik/rng.hpp"
#include "spheretik/solvers.hpp"

using namespace spheretik;
using spheretik::testing::inf;
using spheretik::testing::node;
using spheretik::testing::random_hermitian;

namespace {

Problem two_node_problem(double w0, double w1) {
  std::vector<Node> nodes{
      node("a", Vec3{1, 0, 0}, w0),
      node("b", Vec3{0, 0, 1}, w1),
  };
  return build_problem(std::move(nodes), {{"a", "b", 1.5}});
}

// reads the edge's inputs out of z, falling back to constants for fixed nodes
HermitianMat6 edge_from_z(const Problem& p, const AffineMap& map, std::size_t e,
                          const std::vector<double>& z) {
  const auto [ui, vi] = p.edge_endpoints(e);
  const auto coords = [&](std::size_t n) {
    const int off = map.node_offset(n);
    if (off < 0) return *p.nodes()[n].y;
    return Vec3{z[static_cast<std::size_t>(off)], z[static_cast<std::size_t>(off) + 1],
                z[static_cast<std::size_t>(off) + 2]};
  };
  const std::size_t a = map.aux_offset(e);
  const EdgeAux aux{z[a], z[a + 1], z[a + 2], z[a + 3]};
  return build_edge_matrix(coords(ui), coords(vi), aux);
}

}  // namespace

TEST_CASE("variable layout counts nodes and auxiliaries") {
  const AffineMap both_free = assemble_affine_map(two_node_problem(1.0, 1.0));
  CHECK(both_free.num_vars() == 10);
  CHECK(both_free.node_offset(0) == 0);
  CHECK(both_free.node_offset(1) == 3);
  CHECK(both_free.aux_offset(0) == 6);
  CHECK(both_free.eliminated_nodes().empty());

  const AffineMap one_fixed = assemble_affine_map(two_node_problem(inf(), 1.0));
  CHECK(one_fixed.num_vars() == 7);
  CHECK(one_fixed.node_offset(0) == -1);
  CHECK(one_fixed.node_offset(1) == 0);
  CHECK(one_fixed.aux_offset(0) == 3);

  const AffineMap all_fixed = assemble_affine_map(two_node_problem(inf(), inf()));
  CHECK(all_fixed.num_vars() == 4);
  CHECK(all_fixed.aux_offset(0) == 0);
}

TEST_CASE("edge evaluation matches direct assembly") {
  Rng rng(51);
  for (double w0 : {1.0, inf()}) {
    const Problem p = two_node_problem(w0, 0.7);
    const AffineMap map = assemble_affine_map(p);
    std::vector<double> z(map.num_vars());
    for (int trial = 0; trial < 20; ++trial) {
      for (double& v : z) v = rng.uniform(-2.0, 2.0);
      HermitianMat6 out;
      map.apply_edge(0, z.data(), out);
      CHECK(out.max_abs_diff(edge_from_z(p, map, 0, z)) <= 1e-12);
    }
  }
}

TEST_CASE("adjoint is the transpose of the forward map") {
  Rng rng(52);
  std::vector<Node> nodes{
      node("a", Vec3{1, 0, 0}, 1.0),
      node("b", std::nullopt, 0.0),
      node("c", Vec3{0, 1, 0}, inf()),
  };
  const Problem p = build_problem(nodes, {{"a", "b", 1.0}, {"b", "c", 2.0}, {"a", "c", 0.5}});
  const AffineMap map = assemble_affine_map(p);

  std::vector<double> z(map.num_vars());
  for (int trial = 0; trial < 10; ++trial) {
    for (double& v : z) v = rng.uniform(-1.0, 1.0);
    double forward = 0.0;
    std::vector<double> g(map.num_vars(), 0.0);
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
      const HermitianMat6 y = random_hermitian(rng);
      HermitianMat6 az;
      map.apply_edge(e, z.data(), az);
      az -= map.constants()[e];
      forward += frobenius_inner(az, y);
      map.accumulate_adjoint(e, y, g.data());
    }
    double adj = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) adj += z[i] * g[i];
    CHECK(forward == doctest::Approx(adj).epsilon(1e-10));
  }
}

TEST_CASE("operator norm bound dominates every unit direction") {
  Rng rng(53);
  const Problem p = two_node_problem(1.0, 1.0);
  const AffineMap map = assemble_affine_map(p);
  CHECK(map.operator_norm_bound() > 0.0);

  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> z(map.num_vars());
    double n2 = 0.0;
    for (double& v : z) {
      v = rng.gaussian();
      n2 += v * v;
    }
    const double n = std::sqrt(n2);
    for (double& v : z) v /= n;

    double image2 = 0.0;
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
      HermitianMat6 az;
      map.apply_edge(e, z.data(), az);
      az -= map.constants()[e];
      image2 += frobenius_inner(az, az);
    }
    CHECK(std::sqrt(image2) <= map.operator_norm_bound() * (1.0 + 1e-12));
  }
}

TEST_CASE("objective vector reproduces the relaxed objective") {
  Rng rng(54);
  std::vector<Node> nodes{
      node("a", Vec3{0, 1, 0}, 2.0),
      node("b", std::nullopt, 0.0),
      node("c", Vec3{1, 0, 0}, inf()),
      node("iso", Vec3{0, 0, 1}, 3.0),  // data but no edges
  };
  const Problem p = build_problem(nodes, {{"a", "b", 1.0}, {"b", "c", 0.25}});
  const AffineMap map = assemble_affine_map(p);

  REQUIRE(map.eliminated_nodes() == std::vector<std::size_t>{3});
  CHECK(map.node_offset(3) == -1);
  CHECK(map.num_vars() == 6 + 8);

  std::vector<double> z(map.num_vars());
  for (int trial = 0; trial < 10; ++trial) {
    for (double& v : z) v = rng.uniform(-1.0, 1.0);

    std::map<NodeId, Vec3> x;
    for (std::size_t i = 0; i < p.nodes().size(); ++i) {
      const int off = map.node_offset(i);
      x[p.nodes()[i].id] = off < 0 ? *p.nodes()[i].y
                                   : Vec3{z[static_cast<std::size_t>(off)],
                                          z[static_cast<std::size_t>(off) + 1],
                                          z[static_cast<std::size_t>(off) + 2]};
    }
    std::vector<EdgeAux> aux(p.edges().size());
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
      const std::size_t a = map.aux_offset(e);
      aux[e] = EdgeAux{z[a], z[a + 1], z[a + 2], z[a + 3]};
    }

    double linear = map.constant_term();
    for (std::size_t i = 0; i < z.size(); ++i) linear += map.cost()[i] * z[i];
    CHECK(linear == doctest::Approx(objective_relaxed(p, x, aux)).epsilon(1e-12));
  }

  // data pull enters the node slots, edge weight the d slot, nothing else
  const int off_a = map.node_offset(0);
  REQUIRE(off_a == 0);
  CHECK(map.cost()[0] == 0.0);
  CHECK(map.cost()[1] == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(map.cost()[map.aux_offset(0)] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(map.cost()[map.aux_offset(0) + 1] == 0.0);
  CHECK(map.cost()[map.aux_offset(1)] == doctest::Approx(-0.25).epsilon(1e-15));
}
