#include "partialk/grid.hpp"

#include <cmath>

namespace partialk {

WavenumberGrid::WavenumberGrid(Eigen::VectorXd kmax, Eigen::VectorXd spacing,
                               Eigen::Index max_nodes)
    : kmax_(std::move(kmax)), spacing_(std::move(spacing)) {
  const int d = static_cast<int>(spacing_.size());
  if (d < 1 || d > 3) throw config_error("grid: dimension must be 1, 2 or 3");
  if (kmax_.size() != d) throw config_error("grid: kmax and spacing dimension mismatch");
  for (int j = 0; j < d; ++j) {
    if (!(kmax_(j) > 0.0)) throw config_error("grid: kmax must be positive");
    if (!(spacing_(j) > 0.0)) throw config_error("grid: spacing must be positive");
  }
  halfn_.resize(d);
  double count = 1.0;
  for (int j = 0; j < d; ++j) {
    // tolerate kmax intended as an exact multiple of the spacing
    halfn_(j) = static_cast<int>(std::floor(kmax_(j) / spacing_(j) * (1.0 + 1e-12)));
    count *= 2.0 * halfn_(j) + 1.0;
  }
  if (count > static_cast<double>(max_nodes))
    throw config_error("grid: " + std::to_string(static_cast<long long>(count)) +
                       " nodes exceed the limit of " + std::to_string(max_nodes) +
                       "; reduce kmax or increase spacing");
  n_nodes_ = static_cast<Eigen::Index>(count);
  strides_.resize(d);
  strides_(d - 1) = 1;
  for (int j = d - 2; j >= 0; --j)
    strides_(j) = strides_(j + 1) * (2 * halfn_(j + 1) + 1);
}

Eigen::VectorXi WavenumberGrid::node_tuple(Eigen::Index i) const {
  Eigen::VectorXi z(dim());
  for (int j = 0; j < dim(); ++j) {
    z(j) = static_cast<int>(i / strides_(j)) % (2 * halfn_(j) + 1) - halfn_(j);
  }
  return z;
}

Eigen::RowVectorXd WavenumberGrid::node(Eigen::Index i) const {
  Eigen::VectorXi z = node_tuple(i);
  Eigen::RowVectorXd k(dim());
  for (int j = 0; j < dim(); ++j) k(j) = z(j) * spacing_(j);
  return k;
}

Eigen::Index WavenumberGrid::flat_index(const Eigen::Ref<const Eigen::VectorXi>& z) const {
  Eigen::Index i = 0;
  for (int j = 0; j < dim(); ++j) {
    if (z(j) < -halfn_(j) || z(j) > halfn_(j))
      throw config_error("grid: tuple outside grid range");
    i += static_cast<Eigen::Index>(z(j) + halfn_(j)) * strides_(j);
  }
  return i;
}

Eigen::Index WavenumberGrid::mirror_index(Eigen::Index i) const {
  return n_nodes_ - 1 - i;
}

Eigen::Index WavenumberGrid::zero_index() const {
  return (n_nodes_ - 1) / 2;
}

WavenumberGrid make_grid(const Eigen::VectorXd& kmax, const Eigen::VectorXd& spacing,
                         Eigen::Index max_nodes) {
  return WavenumberGrid(kmax, spacing, max_nodes);
}

}  // namespace partialk
