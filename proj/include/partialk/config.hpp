#pragma once

#include <Eigen/Dense>
#include <string>

#include "partialk/curve.hpp"

namespace partialk {

/// Pipeline settings.  Zeros and empty vectors select the data-driven
/// defaults noted per field; scalars broadcast across axes.
struct EstimationConfig {
  int n_tapers = 8;
  Eigen::VectorXd kmax;           // empty: 0.5 per axis
  Eigen::VectorXd spacing;        // empty: 1 / window side length
  double radial_spacing = 0.0;    // 0: min_j spacing_j
  double radial_kappa_max = 0.0;  // 0: min_j realized kmax_j
  double bandwidth = 0.0;         // 0: 2 max_j spacing_j
  std::string route = "rotational";     // or "direct"
  std::string partial_route = "schur";  // or "fast"
  bool debias = true;
  RadiiSpec radii{0.5, 20.0, 40};
  Eigen::Index max_nodes = 4000000;
};

/// Applies one key = value setting. Keys: tapers, kmax, spacing,
/// radial_spacing, radial_kappa_max, bandwidth, route, partial_route,
/// debias, radii (start:stop:count), max_nodes. Vector values are comma
/// separated. Unknown keys or unparseable values raise config_error.
void apply_config_entry(EstimationConfig& cfg, const std::string& key,
                        const std::string& value);

/// Flat key = value file on top of the defaults; '#' starts a comment and
/// blank lines are skipped.
EstimationConfig read_config_file(const std::string& path);

}  // namespace partialk
