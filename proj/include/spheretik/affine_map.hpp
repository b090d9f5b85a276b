#pragma once

#include <cstddef>
#include <vector>

#include "spheretik/graph.hpp"
#include "spheretik/pauli.hpp"

namespace spheretik {

/// The per-edge constraint matrices as affine functions of the solver
/// variable vector z: A_e(z) = C_e + sum_i z[i] * B_{e,i}.
///
/// Layout of z: three coordinate slots per free node with at least one
/// incident edge (in node order), then four auxiliary slots (d, e, f, g) per
/// edge (in edge order). Fixed nodes are substituted into C_e as constants.
/// Free nodes without incident edges never enter any constraint; the
/// relaxation would be unbounded in them, so they are eliminated up front and
/// their optimum x = y is substituted directly.
class AffineMap {
 public:
  struct Coefficient {
    std::size_t var;
    HermitianMat6 mat;
  };

  std::size_t num_vars() const { return num_vars_; }
  /// Slot of a node's first coordinate in z, or -1 if fixed/eliminated.
  int node_offset(std::size_t node_index) const { return node_offset_[node_index]; }
  std::size_t aux_offset(std::size_t edge_index) const {
    return aux_base_ + 4 * edge_index;
  }
  const std::vector<std::size_t>& eliminated_nodes() const { return eliminated_; }

  const std::vector<HermitianMat6>& constants() const { return constants_; }
  const std::vector<std::vector<Coefficient>>& coefficients() const { return coeffs_; }

  /// Linear objective c so that the relaxed objective is c.z + constant_term.
  const std::vector<double>& cost() const { return cost_; }
  double constant_term() const { return constant_; }

  /// Upper bound on the operator norm of the stacked linear map z -> (B_e z).
  double operator_norm_bound() const { return norm_bound_; }

  /// out = A_e(z).
  void apply_edge(std::size_t edge_index, const double* z, HermitianMat6& out) const;
  /// g[i] += <B_{e,i}, Y>_F for each variable entering edge e.
  void accumulate_adjoint(std::size_t edge_index, const HermitianMat6& y, double* g) const;

  friend AffineMap assemble_affine_map(const Problem& problem);

 private:
  std::size_t num_vars_ = 0;
  std::size_t aux_base_ = 0;
  std::vector<int> node_offset_;
  std::vector<std::size_t> eliminated_;
  std::vector<HermitianMat6> constants_;
  std::vector<std::vector<Coefficient>> coeffs_;
  std::vector<double> cost_;
  double constant_ = 0.0;
  double norm_bound_ = 0.0;
};

AffineMap assemble_affine_map(const Problem& problem);

}  // namespace spheretik
