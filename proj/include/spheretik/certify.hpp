#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "spheretik/graph.hpp"
#include "spheretik/solvers.hpp"
#include "spheretik/vec3.hpp"

namespace spheretik {

/// Default tolerances for declaring a relaxed solution exact. An order looser
/// than the solver's feasibility target so certification is stable.
constexpr double kDefaultTolX = 1e-5;
constexpr double kDefaultTolD = 1e-5;
/// An eigenvalue below this fraction of the largest one counts as zero when
/// computing numeric rank.
constexpr double kRankRelTol = 1e-6;

struct EdgeCheck {
  NodeId u;
  NodeId v;
  std::array<double, 6> eigenvalues{};  // ascending
  int numeric_rank = 0;
  double d_defect = 0.0;  // |d - x.x'|
};

struct TightnessReport {
  std::vector<EdgeCheck> per_edge;
  double max_norm_defect = 0.0;  // max over free nodes of | ||x|| - 1 |
  double max_d_defect = 0.0;
  bool tight = false;
  std::map<NodeId, UnitVec3> rounded_x;
  double gap = 0.0;  // objective_original(rounded_x) - objective_relaxed
  std::vector<std::string> diagnostics;
};

/// Checks whether the relaxed solution lies in the original feasible set:
/// every free node on the sphere within tol_x, every auxiliary d within
/// tol_d of x.x', every edge matrix of numeric rank <= 2. rounded_x
/// normalizes each free node (falling back to y, else (0,0,1), on a
/// degenerate norm, which also voids tightness). gap measures how far the
/// rounded feasible point sits above the relaxation's lower bound.
TightnessReport certify_tightness(const Problem& problem, const RelaxedSolution& sol,
                                  double tol_x = kDefaultTolX, double tol_d = kDefaultTolD);

/// Mean over nodes of the great-circle angle between x and xref, in degrees.
/// Throws KeyMismatch unless both maps cover exactly the same nodes.
double mean_angular_error(const std::map<NodeId, UnitVec3>& x,
                          const std::map<NodeId, UnitVec3>& xref);

/// A posteriori suboptimality bound for rounded_x: its objective exceeds the
/// global optimum of the original problem by at most this much (plus solver
/// feasibility slack).
double global_optimality_bound(const TightnessReport& report);

}  // namespace spheretik
