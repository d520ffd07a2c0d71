#pragma once

#include <Eigen/Dense>

#include "partialk/errors.hpp"

namespace partialk {

/// Symmetric rectangular wavenumber grid
///   Omega = { (z_1 d_1, ..., z_d d_d) : |z_j| <= n_j },  n_j = floor(kmax_j / d_j).
///
/// Nodes are ordered row-major over the integer tuples z with axis 0
/// slowest, z_j running from -n_j to n_j; the grid always contains 0 and
/// equals its own mirror image.
class WavenumberGrid {
 public:
  WavenumberGrid() = default;
  WavenumberGrid(Eigen::VectorXd kmax, Eigen::VectorXd spacing, Eigen::Index max_nodes);

  int dim() const { return static_cast<int>(spacing_.size()); }
  const Eigen::VectorXd& kmax() const { return kmax_; }
  const Eigen::VectorXd& spacing() const { return spacing_; }
  const Eigen::VectorXi& half_counts() const { return halfn_; }
  Eigen::Index n_nodes() const { return n_nodes_; }

  /// Integer tuple of node i, entries in [-n_j, n_j].
  Eigen::VectorXi node_tuple(Eigen::Index i) const;
  /// Wavenumber of node i.
  Eigen::RowVectorXd node(Eigen::Index i) const;
  double node_norm(Eigen::Index i) const { return node(i).norm(); }
  /// Flat index of an integer tuple.
  Eigen::Index flat_index(const Eigen::Ref<const Eigen::VectorXi>& z) const;
  /// Index of -k for node i.
  Eigen::Index mirror_index(Eigen::Index i) const;
  /// Index of the origin.
  Eigen::Index zero_index() const;
  /// Volume d_1 ... d_d of one grid cell.
  double cell_volume() const { return spacing_.prod(); }

 private:
  Eigen::VectorXd kmax_, spacing_;
  Eigen::VectorXi halfn_;
  Eigen::VectorXi strides_;
  Eigen::Index n_nodes_ = 0;
};

/// Builds the grid, guarding against more than max_nodes nodes.
WavenumberGrid make_grid(const Eigen::VectorXd& kmax, const Eigen::VectorXd& spacing,
                         Eigen::Index max_nodes = 4000000);

}  // namespace partialk
