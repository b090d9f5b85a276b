#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spheretik/vec3.hpp"

namespace spheretik {

using NodeId = std::string;

/// Unordered edge key in problem storage order (u, v as given on input).
using EdgeKey = std::pair<NodeId, NodeId>;

struct Node {
  NodeId id;
  std::optional<Vec3> y;  // observed datum, unit length after validation
  double w = 0.0;         // data weight; +inf pins the node to y
};

struct Edge {
  NodeId u;
  NodeId v;
  double lambda = 1.0;
};

/// Validated regularization problem: graph topology, data, weights.
/// Immutable after build_problem; safe to share read-only across threads.
class Problem {
 public:
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::size_t node_index(const NodeId& id) const;  // throws UnknownNode
  bool has_node(const NodeId& id) const { return index_.count(id) > 0; }

  bool is_fixed(std::size_t node) const { return nodes_[node].w == std::numeric_limits<double>::infinity(); }

  /// Endpoint indices of edge k, in storage order.
  std::pair<std::size_t, std::size_t> edge_endpoints(std::size_t k) const { return endpoints_[k]; }

  /// Indices of edges incident to a node, in edge storage order.
  const std::vector<std::size_t>& incident(std::size_t node) const { return incident_[node]; }

  EdgeKey edge_key(std::size_t k) const { return {edges_[k].u, edges_[k].v}; }

  /// Non-fatal findings from validation (e.g. dropped zero-weight edges).
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  friend Problem build_problem(std::vector<Node> nodes, std::vector<Edge> edges);

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<NodeId, std::size_t> index_;
  std::vector<std::pair<std::size_t, std::size_t>> endpoints_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::string> diagnostics_;
};

/// Validates and assembles a Problem. Near-unit data (||y|| within 1e-6 of 1)
/// are renormalized; zero-weight edges are dropped with a diagnostic. Throws
/// Error with the codes listed in error.hpp on structural violations.
Problem build_problem(std::vector<Node> nodes, std::vector<Edge> edges);

struct Partition {
  std::vector<NodeId> fixed;  // w = +inf
  std::vector<NodeId> free;   // everything else
};

Partition partition_fixed_free(const Problem& problem);

std::vector<Edge> incident_edges(const Problem& problem, const NodeId& id);

}  // namespace spheretik
