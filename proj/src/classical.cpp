#include "partialk/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "partialk/parallel.hpp"

namespace partialk {

Eigen::VectorXd border_corrected_k(const MultiTypePattern& pattern, const std::string& x,
                                   const std::string& y, const Eigen::VectorXd& radii) {
  if (radii.size() == 0) throw config_error("radii grid is empty");
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    if (!(radii(i) >= 0.0) || !std::isfinite(radii(i)))
      throw config_error("radii must be nonnegative");
    if (i > 0 && !(radii(i) > radii(i - 1)))
      throw config_error("radii must be strictly increasing");
  }
  const int ix = pattern.index_of(x);
  const int iy = pattern.index_of(y);
  const Eigen::MatrixXd& px = pattern.coords(ix);
  const Eigen::MatrixXd& py = pattern.coords(iy);
  const double lambda_x =
      static_cast<double>(px.rows()) / pattern.window().volume();
  if (!(lambda_x > 0.0))
    throw config_error("border correction needs at least one point of type '" + x + "'");
  const bool same = ix == iy;

  // per reference point: boundary distance and sorted positive distances to X
  const Eigen::Index ny = py.rows();
  std::vector<double> border(ny);
  std::vector<std::vector<double>> dists(ny);
  parallel_for(ny, [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index j = begin; j < end; ++j) {
      border[j] = pattern.window().boundary_distance(py.row(j));
      auto& dj = dists[j];
      dj.reserve(px.rows());
      for (Eigen::Index i = 0; i < px.rows(); ++i) {
        if (same && i == j) continue;
        const double dist = (px.row(i) - py.row(j)).norm();
        if (dist > 0.0) dj.push_back(dist);
      }
      std::sort(dj.begin(), dj.end());
    }
  });

  Eigen::VectorXd k(radii.size());
  for (Eigen::Index t = 0; t < radii.size(); ++t) {
    const double r = radii(t);
    Eigen::Index eligible = 0;
    double pairs = 0.0;
    for (Eigen::Index j = 0; j < ny; ++j) {
      if (border[j] < r) continue;
      ++eligible;
      pairs += static_cast<double>(
          std::upper_bound(dists[j].begin(), dists[j].end(), r) - dists[j].begin());
    }
    k(t) = eligible == 0 ? std::numeric_limits<double>::quiet_NaN()
                         : pairs / (static_cast<double>(eligible) * lambda_x);
  }
  return k;
}

}  // namespace partialk
