#include "spheretik/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "spheretik/error.hpp"
#include "spheretik/rng.hpp"
#include "spheretik/vmf.hpp"

namespace spheretik {

namespace {

void validate_spec(const ExperimentSpec& spec) {
  const bool sizes_ok = spec.topology == Topology::Chain
                            ? spec.length >= 1
                            : (spec.rows >= 1 && spec.cols >= 1);
  if (!sizes_ok) {
    throw Error(ErrorCode::InvalidArgument, "experiment sizes must be at least 1");
  }
  if (!(spec.kappa >= 0.0) || !std::isfinite(spec.kappa)) {
    throw Error(ErrorCode::InvalidArgument, "kappa must be a nonnegative number");
  }
  if (!(spec.w >= 0.0) || !std::isfinite(spec.w)) {
    throw Error(ErrorCode::InvalidArgument, "node weight must be a finite nonnegative number");
  }
  if (!(spec.lambda > 0.0) || !std::isfinite(spec.lambda)) {
    throw Error(ErrorCode::InvalidArgument, "edge weight must be a finite positive number");
  }
  if (!(spec.fixed_fraction >= 0.0) || !(spec.fixed_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "fixed_fraction must lie in [0,1]");
  }
}

double blend_param(int i, int n) { return n <= 1 ? 0.0 : double(i) / double(n - 1); }

}  // namespace

Experiment generate_experiment(const ExperimentSpec& spec) {
  validate_spec(spec);
  Rng rng(spec.seed);

  std::vector<NodeId> ids;
  std::vector<UnitVec3> truth;
  std::vector<Edge> edges;

  if (spec.topology == Topology::Chain) {
    const UnitVec3 head = random_unit(rng);
    const UnitVec3 tail = random_unit(rng);
    for (int i = 0; i < spec.length; ++i) {
      ids.push_back("n" + std::to_string(i));
      truth.push_back(slerp(head, tail, blend_param(i, spec.length)));
    }
    for (int i = 0; i + 1 < spec.length; ++i) {
      edges.push_back({ids[i], ids[i + 1], spec.lambda});
    }
  } else {
    const UnitVec3 c00 = random_unit(rng);
    const UnitVec3 c01 = random_unit(rng);
    const UnitVec3 c10 = random_unit(rng);
    const UnitVec3 c11 = random_unit(rng);
    for (int r = 0; r < spec.rows; ++r) {
      for (int c = 0; c < spec.cols; ++c) {
        ids.push_back("r" + std::to_string(r) + "c" + std::to_string(c));
        const double tc = blend_param(c, spec.cols);
        const UnitVec3 top = slerp(c00, c01, tc);
        const UnitVec3 bottom = slerp(c10, c11, tc);
        truth.push_back(slerp(top, bottom, blend_param(r, spec.rows)));
      }
    }
    const auto at = [&](int r, int c) { return ids[r * spec.cols + c]; };
    for (int r = 0; r < spec.rows; ++r) {
      for (int c = 0; c < spec.cols; ++c) {
        if (c + 1 < spec.cols) edges.push_back({at(r, c), at(r, c + 1), spec.lambda});
        if (r + 1 < spec.rows) edges.push_back({at(r, c), at(r + 1, c), spec.lambda});
      }
    }
  }

  const std::size_t n = ids.size();
  std::vector<Node> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i].id = ids[i];
  }

  if (spec.fixed_fraction > 0.0) {
    // Interpolation: pin a seeded subset to the exact truth, leave the rest
    // data-free.
    std::size_t k = static_cast<std::size_t>(std::llround(spec.fixed_fraction * double(n)));
    k = std::clamp<std::size_t>(k, 1, n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + rng.uniform_index(n - i);
      std::swap(order[i], order[j]);
    }
    for (std::size_t i = 0; i < k; ++i) {
      Node& node = nodes[order[i]];
      node.w = std::numeric_limits<double>::infinity();
      node.y = truth[order[i]].vec();
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      nodes[i].w = spec.w;
      nodes[i].y = sample_vmf(VmfParams{truth[i], spec.kappa}, rng).vec();
    }
  }

  Experiment out{build_problem(std::move(nodes), std::move(edges)), {}};
  for (std::size_t i = 0; i < n; ++i) {
    out.truth.emplace(ids[i], truth[i]);
  }
  return out;
}

}  // namespace spheretik
