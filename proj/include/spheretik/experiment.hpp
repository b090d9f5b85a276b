#pragma once

#include <cstdint>
#include <map>

#include "spheretik/graph.hpp"
#include "spheretik/vec3.hpp"

namespace spheretik {

enum class Topology { Chain, Grid2d };

struct ExperimentSpec {
  Topology topology = Topology::Chain;
  int length = 10;  // chain
  int rows = 3;     // grid
  int cols = 3;
  double kappa = 10.0;          // noise concentration; larger = cleaner
  double w = 1.0;               // data weight in smoothing mode
  double lambda = 1.0;          // edge weight
  double fixed_fraction = 0.0;  // > 0 switches to interpolation mode
  std::uint64_t seed = 0;
};

struct Experiment {
  Problem problem;
  std::map<NodeId, UnitVec3> truth;
};

/// Builds a synthetic instance with a smooth ground truth (great-circle
/// interpolation between random directions; grids blend their four corners).
/// In smoothing mode every node observes a von Mises-Fisher sample around the
/// truth with weight w. With fixed_fraction > 0, a seeded subset of at least
/// one node is pinned to the exact truth (w = inf) and the rest carry no
/// data (w = 0). Deterministic for a fixed spec.
Experiment generate_experiment(const ExperimentSpec& spec);

}  // namespace spheretik
