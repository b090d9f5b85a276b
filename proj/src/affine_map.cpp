#include "spheretik/affine_map.hpp"

#include <cmath>

#include "spheretik/kernels.hpp"
#include "spheretik/rng.hpp"

namespace spheretik {

namespace {

HermitianMat6 diff(const HermitianMat6& a, const HermitianMat6& b) {
  HermitianMat6 out = a;
  out -= b;
  return out;
}

Vec3 unit_axis(int k) {
  Vec3 v{0.0, 0.0, 0.0};
  (k == 0 ? v.x : k == 1 ? v.y : v.z) = 1.0;
  return v;
}

}  // namespace

void AffineMap::apply_edge(std::size_t edge_index, const double* z, HermitianMat6& out) const {
  const auto& ops = kernels::active();
  out = constants_[edge_index];
  for (const Coefficient& c : coeffs_[edge_index]) {
    const double zi = z[c.var];
    ops.axpy(36, zi, c.mat.re(), out.re());
    ops.axpy(36, zi, c.mat.im(), out.im());
  }
}

void AffineMap::accumulate_adjoint(std::size_t edge_index, const HermitianMat6& y,
                                   double* g) const {
  const auto& ops = kernels::active();
  for (const Coefficient& c : coeffs_[edge_index]) {
    g[c.var] += ops.dot(36, c.mat.re(), y.re()) + ops.dot(36, c.mat.im(), y.im());
  }
}

AffineMap assemble_affine_map(const Problem& problem) {
  AffineMap map;
  const auto& nodes = problem.nodes();
  const std::size_t n = nodes.size();
  const std::size_t num_edges = problem.edges().size();

  map.node_offset_.assign(n, -1);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (problem.is_fixed(i)) continue;
    if (problem.incident(i).empty()) {
      // No constraint touches this node, so the relaxation would be unbounded
      // in it; its data term alone is minimized exactly at x = y.
      map.eliminated_.push_back(i);
      continue;
    }
    map.node_offset_[i] = static_cast<int>(next);
    next += 3;
  }
  map.aux_base_ = next;
  map.num_vars_ = next + 4 * num_edges;

  map.cost_.assign(map.num_vars_, 0.0);
  map.constant_ = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Node& node = nodes[i];
    if (problem.is_fixed(i) || node.w == 0.0) continue;
    map.constant_ += node.w;
    if (map.node_offset_[i] >= 0) {
      const Vec3& y = *node.y;
      map.cost_[map.node_offset_[i] + 0] = -node.w * y.x;
      map.cost_[map.node_offset_[i] + 1] = -node.w * y.y;
      map.cost_[map.node_offset_[i] + 2] = -node.w * y.z;
    } else {
      // Eliminated node at x = y contributes w(1 - y.y) = 0 in total.
      map.constant_ -= node.w * inner(*node.y, *node.y);
    }
  }

  map.constants_.resize(num_edges);
  map.coeffs_.resize(num_edges);
  for (std::size_t e = 0; e < num_edges; ++e) {
    const auto [ui, vi] = problem.edge_endpoints(e);
    const double lambda = problem.edges()[e].lambda;
    map.constant_ += lambda;
    map.cost_[map.aux_offset(e) + 0] = -lambda;

    const bool u_free = map.node_offset_[ui] >= 0;
    const bool v_free = map.node_offset_[vi] >= 0;
    const Vec3 xu0 = u_free ? Vec3{0.0, 0.0, 0.0} : *nodes[ui].y;
    const Vec3 xv0 = v_free ? Vec3{0.0, 0.0, 0.0} : *nodes[vi].y;

    const HermitianMat6 c0 = build_edge_matrix(xu0, xv0, EdgeAux{0.0, 0.0, 0.0, 0.0});
    map.constants_[e] = c0;

    auto& coeffs = map.coeffs_[e];
    if (u_free) {
      for (int k = 0; k < 3; ++k) {
        coeffs.push_back({static_cast<std::size_t>(map.node_offset_[ui] + k),
                          diff(build_edge_matrix(unit_axis(k), xv0, EdgeAux{0, 0, 0, 0}), c0)});
      }
    }
    if (v_free) {
      for (int k = 0; k < 3; ++k) {
        coeffs.push_back({static_cast<std::size_t>(map.node_offset_[vi] + k),
                          diff(build_edge_matrix(xu0, unit_axis(k), EdgeAux{0, 0, 0, 0}), c0)});
      }
    }
    const EdgeAux unit_aux[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    for (int k = 0; k < 4; ++k) {
      coeffs.push_back(
          {map.aux_offset(e) + k, diff(build_edge_matrix(xu0, xv0, unit_aux[k]), c0)});
    }
  }

  // Power iteration on B*B for the stacked linear map; 50 rounds, then a 1%
  // safety margin on top of the Rayleigh estimate.
  if (map.num_vars_ > 0 && num_edges > 0) {
    Rng rng(0x9d2c5680u);
    std::vector<double> v(map.num_vars_), w(map.num_vars_);
    for (auto& vi_ : v) vi_ = rng.gaussian();
    double lambda_max = 0.0;
    HermitianMat6 img;
    for (int it = 0; it < 50; ++it) {
      double nrm = 0.0;
      for (double c : v) nrm += c * c;
      nrm = std::sqrt(nrm);
      if (nrm == 0.0) break;
      for (auto& c : v) c /= nrm;

      std::fill(w.begin(), w.end(), 0.0);
      for (std::size_t e = 0; e < num_edges; ++e) {
        img = HermitianMat6{};
        for (const auto& c : map.coeffs_[e]) {
          const double zi = v[c.var];
          for (int k = 0; k < 36; ++k) {
            img.re()[k] += zi * c.mat.re()[k];
            img.im()[k] += zi * c.mat.im()[k];
          }
        }
        for (const auto& c : map.coeffs_[e]) {
          double acc = 0.0;
          for (int k = 0; k < 36; ++k) {
            acc += c.mat.re()[k] * img.re()[k] + c.mat.im()[k] * img.im()[k];
          }
          w[c.var] += acc;
        }
      }
      lambda_max = 0.0;
      for (std::size_t i = 0; i < map.num_vars_; ++i) lambda_max += v[i] * w[i];
      v.swap(w);
    }
    map.norm_bound_ = std::sqrt(std::max(lambda_max, 0.0)) * 1.01;
  }

  return map;
}

}  // namespace spheretik
