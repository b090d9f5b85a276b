#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spheretik/graph.hpp"
#include "spheretik/pauli.hpp"
#include "spheretik/vec3.hpp"

namespace spheretik {

struct SolverParams {
  int max_iters = 20000;
  double tol_feasibility = 1e-7;
  double tol_change = 1e-9;
  double step_scale = 0.99;  // must lie in (0,1)
  std::uint64_t seed = 0;
};

/// Throws InvalidArgument when a field is out of range.
void validate_params(const SolverParams& params);

/// Sum of data and edge penalties for a unit-sphere signal:
///   sum_n w_n (1 - x_n.y_n) + sum_e lambda_e (1 - x_u.x_v).
/// Pinned nodes (w = +inf) must carry exactly their datum and contribute 0.
double objective_original(const Problem& problem, const std::map<NodeId, UnitVec3>& x);

/// Relaxed objective: data terms as above (free nodes only) plus
/// sum_e lambda_e (1 - aux[e].d). aux is indexed in problem edge order.
double objective_relaxed(const Problem& problem, const std::map<NodeId, Vec3>& x,
                         const std::vector<EdgeAux>& aux);

struct LocalSolution {
  std::map<NodeId, UnitVec3> x;
  int sweeps = 0;
  bool converged = true;  // change criterion met before the sweep cap
  std::vector<std::string> diagnostics;
};

/// Block-coordinate descent on the sphere from a feasible start: each free
/// node moves to normalize(w y + sum of lambda-weighted neighbors), sweeping
/// in node order until the largest componentwise movement drops to tol_change
/// or below. The objective never increases. Degenerate updates (zero
/// direction) keep the previous value and record a diagnostic.
LocalSolution solve_local(const Problem& problem, const std::map<NodeId, UnitVec3>& x0,
                          const SolverParams& params);

/// Best of `restarts` solve_local runs from seeded random feasible starts.
LocalSolution solve_local_multistart(const Problem& problem, int restarts,
                                     const SolverParams& params);

struct BaselineSolution {
  std::map<NodeId, Vec3> ball;        // minimizer over the unit ball
  std::map<NodeId, UnitVec3> rounded; // per-node normalization of `ball`
  int sweeps = 0;
  bool converged = true;
  std::vector<std::string> diagnostics;
};

/// Ball relaxation: minimizes sum_n w_n ||x_n - y_n||^2/2 +
/// sum_e lambda ||x_u - x_v||^2/2 with each x_n in the closed unit ball
/// (convex; cyclic exact coordinate minimization), then rescales each node
/// back to the sphere. Degenerate rescaling falls back to y_n if present,
/// else (0,0,1), with a diagnostic.
BaselineSolution solve_baseline(const Problem& problem, const SolverParams& params);

struct RelaxedSolution {
  std::map<NodeId, Vec3> x;       // all nodes; pinned nodes carry y
  std::vector<EdgeAux> aux;       // per edge, problem order
  std::vector<HermitianMat6> dual;
  double objective_relaxed = 0.0;
  int iterations = 0;
  double residual_feasibility = 0.0;  // max over edges of max(0, -min eig)
  double residual_change = 0.0;       // ||dz||_inf / max(1, ||z||_inf) at exit
  bool converged = true;
  std::vector<std::string> diagnostics;
};

/// Semidefinite relaxation: minimizes the linear objective over the per-edge
/// PSD constraints by a primal-dual splitting with one 6x6 cone projection
/// per edge per iteration. Deterministic for fixed inputs; when the residual
/// targets are not met within max_iters the best iterate is still returned
/// with converged = false.
RelaxedSolution solve_relaxation(const Problem& problem, const SolverParams& params);

}  // namespace spheretik
