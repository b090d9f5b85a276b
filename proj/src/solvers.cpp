#include "spheretik/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "spheretik/affine_map.hpp"
#include "spheretik/error.hpp"
#include "spheretik/kernels.hpp"
#include "spheretik/rng.hpp"
#include "spheretik/vmf.hpp"

namespace spheretik {

namespace {

constexpr double kFixedMatchTol = 1e-12;

const UnitVec3& require_value(const std::map<NodeId, UnitVec3>& x, const NodeId& id) {
  const auto it = x.find(id);
  if (it == x.end()) {
    throw Error(ErrorCode::MissingValue, "no value for node '" + id + "'");
  }
  return it->second;
}

void check_fixed_nodes(const Problem& problem, const std::map<NodeId, UnitVec3>& x) {
  const auto& nodes = problem.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!problem.is_fixed(i)) continue;
    const Vec3& xi = require_value(x, nodes[i].id).vec();
    const Vec3& yi = *nodes[i].y;
    const Vec3 d = xi - yi;
    if (std::max({std::abs(d.x), std::abs(d.y), std::abs(d.z)}) > kFixedMatchTol) {
      throw Error(ErrorCode::FixedNodeViolation,
                  "pinned node '" + nodes[i].id + "' deviates from its datum");
    }
  }
}

}  // namespace

void validate_params(const SolverParams& params) {
  if (params.max_iters <= 0) {
    throw Error(ErrorCode::InvalidArgument, "max_iters must be positive");
  }
  if (!(params.tol_feasibility > 0.0) || !(params.tol_change > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
  }
  if (!(params.step_scale > 0.0) || !(params.step_scale < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "step_scale must lie in (0,1)");
  }
}

double objective_original(const Problem& problem, const std::map<NodeId, UnitVec3>& x) {
  check_fixed_nodes(problem, x);
  double obj = 0.0;
  const auto& nodes = problem.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& node = nodes[i];
    const UnitVec3& xi = require_value(x, node.id);
    if (problem.is_fixed(i) || node.w == 0.0) continue;
    obj += node.w * (1.0 - inner(xi.vec(), *node.y));
  }
  for (std::size_t e = 0; e < problem.edges().size(); ++e) {
    const auto [ui, vi] = problem.edge_endpoints(e);
    const Vec3& xu = require_value(x, nodes[ui].id).vec();
    const Vec3& xv = require_value(x, nodes[vi].id).vec();
    obj += problem.edges()[e].lambda * (1.0 - inner(xu, xv));
  }
  return obj;
}

double objective_relaxed(const Problem& problem, const std::map<NodeId, Vec3>& x,
                         const std::vector<EdgeAux>& aux) {
  if (aux.size() != problem.edges().size()) {
    throw Error(ErrorCode::MissingValue, "auxiliary values do not cover every edge");
  }
  double obj = 0.0;
  const auto& nodes = problem.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& node = nodes[i];
    if (problem.is_fixed(i) || node.w == 0.0) continue;
    const auto it = x.find(node.id);
    if (it == x.end()) {
      throw Error(ErrorCode::MissingValue, "no value for node '" + node.id + "'");
    }
    obj += node.w * (1.0 - inner(it->second, *node.y));
  }
  for (std::size_t e = 0; e < problem.edges().size(); ++e) {
    obj += problem.edges()[e].lambda * (1.0 - aux[e].d);
  }
  return obj;
}

LocalSolution solve_local(const Problem& problem, const std::map<NodeId, UnitVec3>& x0,
                          const SolverParams& params) {
  validate_params(params);
  check_fixed_nodes(problem, x0);
  const auto& nodes = problem.nodes();
  std::vector<Vec3> x(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    x[i] = require_value(x0, nodes[i].id).vec();
  }

  LocalSolution out;
  out.converged = false;
  std::set<std::size_t> degenerate_seen;
  for (int sweep = 0; sweep < params.max_iters; ++sweep) {
    ++out.sweeps;
    double max_change = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (problem.is_fixed(i)) continue;
      Vec3 s{0.0, 0.0, 0.0};
      if (nodes[i].w > 0.0) {
        s = s + nodes[i].w * (*nodes[i].y);
      }
      for (std::size_t e : problem.incident(i)) {
        const auto [ui, vi] = problem.edge_endpoints(e);
        s = s + problem.edges()[e].lambda * x[ui == i ? vi : ui];
      }
      if (norm(s) <= kDegenerateNorm) {
        if (degenerate_seen.insert(i).second) {
          out.diagnostics.push_back("degenerate update at node '" + nodes[i].id +
                                    "': neighbor pull cancels; kept previous value");
        }
        continue;
      }
      const Vec3 next = normalize(s).vec();
      const Vec3 d = next - x[i];
      max_change = std::max({max_change, std::abs(d.x), std::abs(d.y), std::abs(d.z)});
      x[i] = next;
    }
    if (max_change <= params.tol_change) {
      out.converged = true;
      break;
    }
  }

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out.x.emplace(nodes[i].id, UnitVec3(x[i]));
  }
  return out;
}

LocalSolution solve_local_multistart(const Problem& problem, int restarts,
                                     const SolverParams& params) {
  if (restarts <= 0) {
    throw Error(ErrorCode::InvalidArgument, "restarts must be positive");
  }
  Rng rng(params.seed);
  const auto& nodes = problem.nodes();
  LocalSolution best;
  double best_obj = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    std::map<NodeId, UnitVec3> x0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (problem.is_fixed(i)) {
        x0.emplace(nodes[i].id, UnitVec3(*nodes[i].y));
      } else {
        x0.emplace(nodes[i].id, random_unit(rng));
      }
    }
    LocalSolution cand = solve_local(problem, x0, params);
    const double obj = objective_original(problem, cand.x);
    if (obj < best_obj) {
      best_obj = obj;
      best = std::move(cand);
    }
  }
  return best;
}

BaselineSolution solve_baseline(const Problem& problem, const SolverParams& params) {
  validate_params(params);
  const auto& nodes = problem.nodes();
  std::vector<Vec3> x(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    x[i] = nodes[i].y ? *nodes[i].y : Vec3{0.0, 0.0, 0.0};
  }

  BaselineSolution out;
  out.converged = false;
  for (int sweep = 0; sweep < params.max_iters; ++sweep) {
    ++out.sweeps;
    double max_change = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (problem.is_fixed(i)) continue;
      Vec3 s{0.0, 0.0, 0.0};
      double denom = nodes[i].w;
      if (nodes[i].w > 0.0) {
        s = s + nodes[i].w * (*nodes[i].y);
      }
      for (std::size_t e : problem.incident(i)) {
        const auto [ui, vi] = problem.edge_endpoints(e);
        s = s + problem.edges()[e].lambda * x[ui == i ? vi : ui];
        denom += problem.edges()[e].lambda;
      }
      Vec3 cand = (1.0 / denom) * s;
      const double n = norm(cand);
      if (n > 1.0) {
        cand = (1.0 / n) * cand;
      }
      const Vec3 d = cand - x[i];
      max_change = std::max({max_change, std::abs(d.x), std::abs(d.y), std::abs(d.z)});
      x[i] = cand;
    }
    if (max_change <= params.tol_change) {
      out.converged = true;
      break;
    }
  }

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out.ball.emplace(nodes[i].id, problem.is_fixed(i) ? *nodes[i].y : x[i]);
    if (problem.is_fixed(i)) {
      out.rounded.emplace(nodes[i].id, UnitVec3(*nodes[i].y));
      continue;
    }
    if (norm(x[i]) <= kDegenerateNorm) {
      const Vec3 fallback = nodes[i].y ? *nodes[i].y : Vec3{0.0, 0.0, 1.0};
      out.rounded.emplace(nodes[i].id, UnitVec3(fallback));
      out.diagnostics.push_back("degenerate rescaling at node '" + nodes[i].id +
                                "': ball solution is near zero; used fallback");
    } else {
      out.rounded.emplace(nodes[i].id, normalize(x[i]));
    }
  }
  return out;
}

RelaxedSolution solve_relaxation(const Problem& problem, const SolverParams& params) {
  validate_params(params);
  const AffineMap map = assemble_affine_map(problem);
  const auto& ops = kernels::active();
  const std::size_t m = map.num_vars();
  const std::size_t num_edges = problem.edges().size();
  const auto& nodes = problem.nodes();

  std::vector<double> z(m, 0.0), z_bar(m, 0.0), z_new(m, 0.0), g(m, 0.0);
  std::vector<HermitianMat6> dual(num_edges), applied(num_edges), shifted(num_edges),
      projected(num_edges);
  std::vector<double> min_eigs(num_edges, 0.0);
  std::size_t project_failures = 0;
  std::size_t eig_failures = 0;

  const double tau = num_edges > 0 ? params.step_scale / map.operator_norm_bound() : 0.0;

  RelaxedSolution sol;
  sol.converged = num_edges == 0;
  double feas = 0.0;
  bool feas_valid = num_edges == 0;

  while (!sol.converged && sol.iterations < params.max_iters) {
    ++sol.iterations;

    // Dual ascent: Y <- negative-semidefinite part of (Y + tau * A(z_bar)).
    for (std::size_t e = 0; e < num_edges; ++e) {
      map.apply_edge(e, z_bar.data(), applied[e]);
      shifted[e] = dual[e];
      ops.axpy(36, tau, applied[e].re(), shifted[e].re());
      ops.axpy(36, tau, applied[e].im(), shifted[e].im());
      projected[e] = shifted[e];
    }
    project_failures += ops.psd_project_batch(projected.data(), num_edges);
    for (std::size_t e = 0; e < num_edges; ++e) {
      dual[e] = shifted[e];
      dual[e] -= projected[e];
    }

    // Primal descent with extrapolation.
    std::copy(map.cost().begin(), map.cost().end(), g.begin());
    for (std::size_t e = 0; e < num_edges; ++e) {
      map.accumulate_adjoint(e, dual[e], g.data());
    }
    ops.step_extrapolate(m, z.data(), g.data(), tau, z_new.data(), z_bar.data());
    sol.residual_change =
        ops.max_abs_diff(m, z_new.data(), z.data()) / std::max(1.0, ops.max_abs(m, z_new.data()));
    z.swap(z_new);

    feas_valid = false;
    if (sol.residual_change <= params.tol_change) {
      for (std::size_t e = 0; e < num_edges; ++e) {
        map.apply_edge(e, z.data(), applied[e]);
      }
      eig_failures += ops.min_eig_batch(applied.data(), num_edges, min_eigs.data());
      feas = 0.0;
      for (std::size_t e = 0; e < num_edges; ++e) {
        feas = std::max(feas, -min_eigs[e]);
      }
      feas_valid = true;
      if (feas <= params.tol_feasibility) {
        sol.converged = true;
      }
    }
  }

  if (!feas_valid) {
    for (std::size_t e = 0; e < num_edges; ++e) {
      map.apply_edge(e, z.data(), applied[e]);
    }
    eig_failures += ops.min_eig_batch(applied.data(), num_edges, min_eigs.data());
    feas = 0.0;
    for (std::size_t e = 0; e < num_edges; ++e) {
      feas = std::max(feas, -min_eigs[e]);
    }
  }
  sol.residual_feasibility = feas;

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const int off = map.node_offset(i);
    if (off >= 0) {
      sol.x.emplace(nodes[i].id, Vec3{z[off], z[off + 1], z[off + 2]});
    } else {
      // Pinned or eliminated: the optimum is the datum itself.
      sol.x.emplace(nodes[i].id, *nodes[i].y);
    }
  }
  sol.aux.resize(num_edges);
  for (std::size_t e = 0; e < num_edges; ++e) {
    const std::size_t off = map.aux_offset(e);
    sol.aux[e] = EdgeAux{z[off], z[off + 1], z[off + 2], z[off + 3]};
  }
  sol.dual = std::move(dual);
  sol.objective_relaxed = objective_relaxed(problem, sol.x, sol.aux);

  if (!sol.converged) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "did not converge in %d iterations (feasibility %.3e, change %.3e)",
                  sol.iterations, sol.residual_feasibility, sol.residual_change);
    sol.diagnostics.push_back(buf);
  }
  if (project_failures > 0 || eig_failures > 0) {
    sol.diagnostics.push_back("eigensolve sweep cap hit " +
                              std::to_string(project_failures + eig_failures) + " times");
  }
  return sol;
}

}  // namespace spheretik
