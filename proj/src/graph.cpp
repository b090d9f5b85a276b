#include "spheretik/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "spheretik/error.hpp"

namespace spheretik {

namespace {

constexpr double kInputUnitTol = 1e-6;

// Union-find over node indices; path compression only, sizes are small.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::size_t Problem::node_index(const NodeId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error(ErrorCode::UnknownNode, "no node with id '" + id + "'");
  }
  return it->second;
}

Problem build_problem(std::vector<Node> nodes, std::vector<Edge> edges) {
  Problem p;

  for (auto& node : nodes) {
    if (node.id.empty()) {
      throw Error(ErrorCode::InvalidArgument, "node id must be non-empty");
    }
    if (std::isnan(node.w) || node.w < 0.0) {
      throw Error(ErrorCode::InvalidNodeWeight, "node '" + node.id + "' has weight " + std::to_string(node.w));
    }
    if (!p.index_.emplace(node.id, p.nodes_.size()).second) {
      throw Error(ErrorCode::DuplicateNode, "node id '" + node.id + "' appears twice");
    }
    if (node.w > 0.0 && !node.y.has_value()) {
      throw Error(ErrorCode::MissingDatum, "node '" + node.id + "' has positive weight but no datum");
    }
    if (node.y.has_value()) {
      if (!node.y->finite()) {
        throw Error(ErrorCode::NonFiniteValue, "datum of node '" + node.id + "' is not finite");
      }
      const double n = norm(*node.y);
      if (std::abs(n - 1.0) > kInputUnitTol) {
        throw Error(ErrorCode::NonUnitDatum,
                    "datum of node '" + node.id + "' has norm " + std::to_string(n));
      }
      node.y = normalize(*node.y).vec();
    }
    p.nodes_.push_back(std::move(node));
  }

  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& edge : edges) {
    auto iu = p.index_.find(edge.u);
    auto iv = p.index_.find(edge.v);
    if (iu == p.index_.end() || iv == p.index_.end()) {
      throw Error(ErrorCode::DanglingEdge,
                  "edge {" + edge.u + "," + edge.v + "} references an unknown node");
    }
    if (iu->second == iv->second) {
      throw Error(ErrorCode::SelfLoop, "edge {" + edge.u + "," + edge.v + "} is a self-loop");
    }
    if (std::isnan(edge.lambda) || edge.lambda < 0.0 || std::isinf(edge.lambda)) {
      throw Error(ErrorCode::InvalidEdgeWeight,
                  "edge {" + edge.u + "," + edge.v + "} has weight " + std::to_string(edge.lambda));
    }
    if (edge.lambda == 0.0) {
      p.diagnostics_.push_back("dropped zero-weight edge {" + edge.u + "," + edge.v + "}");
      continue;
    }
    const auto key = std::minmax(iu->second, iv->second);
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::DuplicateEdge, "edge {" + edge.u + "," + edge.v + "} appears twice");
    }
    p.endpoints_.emplace_back(iu->second, iv->second);
    p.edges_.push_back(edge);
  }

  p.incident_.assign(p.nodes_.size(), {});
  for (std::size_t k = 0; k < p.edges_.size(); ++k) {
    p.incident_[p.endpoints_[k].first].push_back(k);
    p.incident_[p.endpoints_[k].second].push_back(k);
  }

  // Every connected component needs some data attachment (w > 0, possibly
  // +inf); otherwise the objective is constant there and no solver can pick
  // a meaningful value.
  DisjointSets components(p.nodes_.size());
  for (const auto& [a, b] : p.endpoints_) {
    components.unite(a, b);
  }
  std::vector<char> anchored(p.nodes_.size(), 0);
  for (std::size_t i = 0; i < p.nodes_.size(); ++i) {
    if (p.nodes_[i].w > 0.0) {
      anchored[components.find(i)] = 1;
    }
  }
  for (std::size_t i = 0; i < p.nodes_.size(); ++i) {
    if (!anchored[components.find(i)]) {
      throw Error(ErrorCode::UnanchoredComponent,
                  "component containing node '" + p.nodes_[i].id +
                      "' has no node with positive weight");
    }
  }

  return p;
}

Partition partition_fixed_free(const Problem& problem) {
  Partition part;
  for (std::size_t i = 0; i < problem.nodes().size(); ++i) {
    (problem.is_fixed(i) ? part.fixed : part.free).push_back(problem.nodes()[i].id);
  }
  return part;
}

std::vector<Edge> incident_edges(const Problem& problem, const NodeId& id) {
  const std::size_t n = problem.node_index(id);
  std::vector<Edge> out;
  out.reserve(problem.incident(n).size());
  for (std::size_t k : problem.incident(n)) {
    out.push_back(problem.edges()[k]);
  }
  return out;
}

}  // namespace spheretik
