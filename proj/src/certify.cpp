#include "spheretik/certify.hpp"

#include <cmath>

#include "spheretik/eig6.hpp"
#include "spheretik/error.hpp"
#include "spheretik/pauli.hpp"

namespace spheretik {

TightnessReport certify_tightness(const Problem& problem, const RelaxedSolution& sol,
                                  double tol_x, double tol_d) {
  TightnessReport report;
  const auto& nodes = problem.nodes();

  bool fallback_used = false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto it = sol.x.find(nodes[i].id);
    if (it == sol.x.end()) {
      throw Error(ErrorCode::MissingValue, "solution lacks node '" + nodes[i].id + "'");
    }
    const Vec3& xi = it->second;
    if (problem.is_fixed(i)) {
      report.rounded_x.emplace(nodes[i].id, UnitVec3(*nodes[i].y));
      continue;
    }
    report.max_norm_defect = std::max(report.max_norm_defect, std::abs(norm(xi) - 1.0));
    if (norm(xi) <= kDegenerateNorm) {
      const Vec3 fb = nodes[i].y ? *nodes[i].y : Vec3{0.0, 0.0, 1.0};
      report.rounded_x.emplace(nodes[i].id, UnitVec3(fb));
      report.diagnostics.push_back("degenerate rounding at node '" + nodes[i].id +
                                   "': relaxed point is near zero; used fallback");
      fallback_used = true;
    } else {
      report.rounded_x.emplace(nodes[i].id, normalize(xi));
    }
  }

  if (sol.aux.size() != problem.edges().size()) {
    throw Error(ErrorCode::MissingValue, "solution auxiliaries do not cover every edge");
  }
  bool rank_ok = true;
  for (std::size_t e = 0; e < problem.edges().size(); ++e) {
    const auto [ui, vi] = problem.edge_endpoints(e);
    const Vec3& xu = sol.x.at(nodes[ui].id);
    const Vec3& xv = sol.x.at(nodes[vi].id);

    EdgeCheck check;
    check.u = problem.edges()[e].u;
    check.v = problem.edges()[e].v;
    check.d_defect = std::abs(sol.aux[e].d - inner(xu, xv));
    report.max_d_defect = std::max(report.max_d_defect, check.d_defect);

    const EigenDecomposition6 eig = eig_hermitian(build_edge_matrix(xu, xv, sol.aux[e]));
    check.eigenvalues = eig.eigenvalues;
    const double top = eig.eigenvalues[5];
    if (top > 0.0) {
      for (double lam : eig.eigenvalues) {
        if (lam > kRankRelTol * top) ++check.numeric_rank;
      }
    }
    if (check.numeric_rank > 2) rank_ok = false;
    report.per_edge.push_back(std::move(check));
  }

  report.tight = !fallback_used && rank_ok && report.max_norm_defect <= tol_x &&
                 report.max_d_defect <= tol_d;
  report.gap = objective_original(problem, report.rounded_x) - sol.objective_relaxed;
  return report;
}

double mean_angular_error(const std::map<NodeId, UnitVec3>& x,
                          const std::map<NodeId, UnitVec3>& xref) {
  if (x.size() != xref.size()) {
    throw Error(ErrorCode::KeyMismatch, "maps cover different node sets");
  }
  if (x.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [id, xi] : x) {
    const auto it = xref.find(id);
    if (it == xref.end()) {
      throw Error(ErrorCode::KeyMismatch, "reference lacks node '" + id + "'");
    }
    sum += angular_distance(xi, it->second);
  }
  return (sum / static_cast<double>(x.size())) * (180.0 / 3.14159265358979323846);
}

double global_optimality_bound(const TightnessReport& report) { return report.gap; }

}  // namespace spheretik
