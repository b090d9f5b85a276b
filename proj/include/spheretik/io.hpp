#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spheretik/certify.hpp"
#include "spheretik/graph.hpp"
#include "spheretik/vec3.hpp"

namespace spheretik {

/// Reads and validates a problem file:
///   { "nodes": [ {"id": "n0", "y": [a,b,c], "w": 1.0 | "inf"}, ... ],
///     "edges": [ {"u": "n0", "v": "n1", "lambda": 1.0}, ... ] }
/// "y" may be omitted for nodes with w = 0; "w" defaults to 0 and "lambda"
/// to 1. Throws IoError when unreadable, ParseError naming the offending
/// node/edge/field, and the build_problem validation errors.
Problem load_problem(const std::string& path);

void save_problem(const std::string& path, const Problem& problem);

/// One solver run's emitted result. Optional fields are only written when
/// engaged (the relaxation-specific blocks stay out of baseline/local runs).
struct SolutionOutput {
  std::map<NodeId, UnitVec3> x;
  double objective_original = 0.0;
  std::optional<double> objective_relaxed;
  std::optional<bool> tight;
  std::optional<double> gap;
  bool converged = true;
  int iterations = 0;
  std::vector<EdgeCheck> per_edge;
  std::vector<std::string> diagnostics;
};

void save_solution(const std::string& path, const SolutionOutput& out);

/// Writes just an "x" block, the format shared by ground-truth files.
void save_signal(const std::string& path, const std::map<NodeId, UnitVec3>& x);

/// Reads the "x" block of a solution or ground-truth file.
std::map<NodeId, UnitVec3> load_signal(const std::string& path);

}  // namespace spheretik
